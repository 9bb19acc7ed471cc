import math

import numpy as np
import pytest

from errors import DimensionError, DomainError, NumericalError
from graphs.core import Family, FamilySpec, generate
from spectral.operators import (
    SymmetricOperator, eigendecompose, normalized_adjacency, projector_for, random_symmetric,
    top_eigenspace,
)


def test_normalized_adjacency_k4(k4):
    A = normalized_adjacency(k4).entries
    assert np.allclose(A, (np.ones((4, 4)) - np.eye(4)) / 3)


def test_normalized_adjacency_q3(q3):
    A = normalized_adjacency(q3).entries
    assert A[0, 1] == pytest.approx(1 / 3)
    assert A[0, 3] == 0


@pytest.mark.parametrize("fixture,expected", [
    ("k4", [1, -1 / 3, -1 / 3, -1 / 3]),
    ("q3", [1, 1 / 3, 1 / 3, 1 / 3, -1 / 3, -1 / 3, -1 / 3, -1]),
    ("c6", [1, 0.5, 0.5, -0.5, -0.5, -1]),
])
def test_spectra(request, fixture, expected):
    spec = eigendecompose(normalized_adjacency(request.getfixturevalue(fixture)))
    assert np.allclose(spec.eigenvalues, expected, atol=1e-12)
    assert spec.residual <= 1e-9


def _eigenvalues(spec):
    return eigendecompose(normalized_adjacency(generate(spec))).eigenvalues


@pytest.mark.parametrize("n", range(2, 17))
def test_complete_graph_closed_form(n):
    expected = [1.0] + [-1.0 / (n - 1)] * (n - 1)
    assert np.allclose(_eigenvalues(FamilySpec(Family.COMPLETE, n=n)), expected, atol=1e-9)


@pytest.mark.parametrize("k", range(1, 9))
def test_hypercube_closed_form(k):
    expected = [1 - 2 * j / k for j in range(k + 1) for _ in range(math.comb(k, j))]
    assert np.allclose(_eigenvalues(FamilySpec(Family.HYPERCUBE, k=k)), expected, atol=1e-9)


@pytest.mark.parametrize("n", range(3, 65))
def test_cycle_closed_form(n):
    expected = sorted((math.cos(2 * math.pi * j / n) for j in range(n)), reverse=True)
    assert np.allclose(_eigenvalues(FamilySpec(Family.CYCLE, n=n)), expected, atol=1e-9)


def test_eigenvectors_are_expectation_orthonormal(q3):
    spec = eigendecompose(normalized_adjacency(q3))
    gram = spec.eigenvectors.T @ spec.eigenvectors / q3.n
    assert np.allclose(gram, np.eye(q3.n), atol=1e-12)
    assert np.allclose(spec.reconstruct(), normalized_adjacency(q3).entries, atol=1e-12)


def test_distinct_eigenvalues(q3):
    spec = eigendecompose(normalized_adjacency(q3))
    values = [(round(v, 9), m) for v, m in spec.distinct()]
    assert values == [(1.0, 1), (round(1 / 3, 9), 3), (round(-1 / 3, 9), 3), (-1.0, 1)]


def test_residual_tolerance_is_enforced(q3):
    with pytest.raises(NumericalError):
        eigendecompose(normalized_adjacency(q3), tolerance=-1.0)


def test_projector_k4_constants(k4):
    P = projector_for(k4, 0.9)
    assert P.dimension == 1
    assert np.allclose(P.matrix, np.full((4, 4), 0.25))


def test_projector_q3_diagonal(q3):
    P = projector_for(q3, 0.3)
    assert P.dimension == 4
    assert np.allclose(np.diag(P.matrix), 0.5)


def test_projector_clique_union_blocks(cu23):
    P = projector_for(cu23, 0.9)
    block = np.full((3, 3), 1 / 3)
    expected = np.block([[block, np.zeros((3, 3))], [np.zeros((3, 3)), block]])
    assert P.dimension == 2
    assert np.allclose(P.matrix, expected)


def test_threshold_ties_keep_multiplicity(q3):
    # 1/3 is computed a few ulps off; the tie tolerance keeps all three copies
    assert projector_for(q3, 1 / 3).dimension == 4


def test_projector_below_spectrum_is_identity(q3):
    P = projector_for(q3, -1.0)
    assert P.dimension == 8
    assert np.allclose(P.matrix, np.eye(8))


def test_projector_deviations_are_small(c6):
    P = projector_for(c6, 0.2)
    assert P.dimension == 3
    assert max(P.deviations().values()) < 1e-10


def test_sample_range_lies_in_range(q3):
    P = projector_for(q3, 0.3)
    samples = P.sample_range(np.random.default_rng(0), 5)
    assert samples.shape == (5, 8)
    assert np.allclose(samples @ P.matrix, samples)


def test_threshold_out_of_range(q3):
    spec = eigendecompose(normalized_adjacency(q3))
    with pytest.raises(DomainError):
        top_eigenspace(spec, 1.5)


def test_symmetric_operator_validation():
    with pytest.raises(DomainError):
        SymmetricOperator.from_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DimensionError):
        SymmetricOperator.from_matrix(np.zeros((2, 3)))


def test_random_symmetric_is_seeded():
    M = random_symmetric(8, seed=3)
    assert np.array_equal(M, M.T)
    assert np.array_equal(M, random_symmetric(8, seed=3))
