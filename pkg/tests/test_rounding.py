import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from errors import DomainError, PreconditionError
from graphs.core import Family, FamilySpec, VertexSet, generate
from rounding.sweep import (
    collision_ratio, lcb_bound_low, level_sets, local_cheeger_rhs, round_witness, sweep_high,
    sweep_low,
)

TRIANGLE = np.array([1.0, 1, 1, 0, 0, 0])
HALF_CUBE = np.array([(i & 1) for i in range(8)], dtype=float)       # x_1 = 1
DICTATOR = np.array([1.0 - 2 * (i & 1) for i in range(8)])           # χ_{1}


# =============================================================================
# Level sets
# =============================================================================

def test_level_sets_group_ties(c6):
    sets = level_sets(c6, np.array([3.0, 3.0, 2.0, 0.0, 1.0, 2.0]))
    assert [s.members for s in sets] == [(0, 1), (0, 1, 2, 5), (0, 1, 2, 4, 5)]
    assert [s.threshold for s in sets] == [2.0, 1.0, 0.0]
    assert [s.cut for s in sets] == [2, 2, 2]


def test_level_sets_of_zero_score(c6):
    assert level_sets(c6, np.zeros(6)) == []


@settings(max_examples=100)
@given(score=arrays(np.float64, 12, elements=st.floats(min_value=0, max_value=10)))
def test_level_sets_are_nested(score):
    G = generate(FamilySpec(Family.CYCLE, n=12))
    sets = level_sets(G, score)
    for smaller, larger in zip(sets, sets[1:]):
        assert set(smaller.members) < set(larger.members)
    for s in sets:
        assert s.cut == sum(1 for u in s.members for v in G.adjacency[u] if v not in s.members)
    if sets:
        assert set(sets[-1].members) == set(np.flatnonzero(score > 1e-12 * score.max()))


# =============================================================================
# Local Cheeger bound
# =============================================================================

def test_lcb_triangle(cu23):
    assert lcb_bound_low(cu23, TRIANGLE, 1.0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("rayleigh", [1.0, 0.9999999999999998, 1.0 + 1e-15, -1.0 - 1e-15])
def test_lcb_radicand_snaps_to_zero(rayleigh):
    assert local_cheeger_rhs(rayleigh, 0.5) == 0.0


def test_lcb_constants(k4):
    assert lcb_bound_low(k4, np.ones(4), 2.0) == pytest.approx(0.0, abs=1e-12)


def test_lcb_formula():
    value = local_cheeger_rhs(0.99, 0.25)
    assert value == pytest.approx(math.sqrt(1 - 0.99 ** 2) / 0.75)
    assert value == pytest.approx(0.18813, rel=1e-3)


def test_lcb_infinite_when_collision_is_large():
    assert local_cheeger_rhs(0.5, 1.0) == math.inf


def test_lcb_zero_vector(k4):
    with pytest.raises(DomainError):
        lcb_bound_low(k4, np.zeros(4), 0.5)


# =============================================================================
# Sweeps
# =============================================================================

def test_sweep_low_triangle(cu23):
    result = sweep_low(cu23, TRIANGLE, 0.5)
    assert result.found
    assert result.vertex_set.to_list() == [0, 1, 2]
    assert result.phi == 0 and result.mu == Fraction(1, 2)
    assert result.regime == "low"


def test_sweep_low_half_cube(q3):
    result = sweep_low(q3, HALF_CUBE, 0.5)
    assert result.vertex_set.to_list() == [1, 3, 5, 7]
    assert result.phi == Fraction(1, 3)


def test_sweep_low_constant_vector(k4):
    result = sweep_low(k4, np.ones(4), 0.5)
    assert not result.found
    assert result.level_sets_examined == 1


def test_sweep_zero_vector(k4):
    with pytest.raises(DomainError):
        sweep_low(k4, np.zeros(4), 0.5)
    with pytest.raises(DomainError):
        sweep_high(k4, np.zeros(4), 0.5)


def test_sweep_high_triangle(cu23):
    result = sweep_high(cu23, TRIANGLE, 0.5)
    assert result.vertex_set.to_list() == [0, 1, 2]
    assert result.phi == 0
    assert result.regime == "high"


def test_sweep_high_constant_vector(k4):
    assert not sweep_high(k4, np.ones(4), 0.5).found


def test_sweep_high_dictator(q3):
    result = sweep_high(q3, DICTATOR, 0.5)
    assert not result.found
    assert result.level_sets_examined == 1


def test_sweep_high_vacuous_flag(q3):
    # ε = ||Az||^2 / ||z||^2 = 1/9 for the dictator
    assert sweep_high(q3, DICTATOR, 0.5, constant=100).vacuous
    result = sweep_high(q3, DICTATOR, 0.5, constant=1)
    assert not result.vacuous
    assert result.bound == pytest.approx(1 - 1 / 81)


# =============================================================================
# Rounding pipeline
# =============================================================================

def test_round_witness_triangle(cu23):
    result = round_witness(cu23, TRIANGLE, 0.5, 0.01)
    assert result.certified
    assert result.vertex_set.to_list() == [0, 1, 2]
    assert result.phi == 0 and result.mu == Fraction(1, 2)
    assert result.target == pytest.approx(0.2)


def test_round_witness_half_cube(q3):
    result = round_witness(q3, HALF_CUBE, 0.5, 0.25)
    assert result.certified
    assert result.vertex_set.to_list() == [1, 3, 5, 7]
    assert result.phi == Fraction(1, 3)


def test_round_witness_uncertified(q3):
    # Φ = 1/3 is not below 2√0.01
    result = round_witness(q3, HALF_CUBE, 0.5, 0.01)
    assert result.found and not result.certified


def test_round_witness_collision_fails(k4):
    with pytest.raises(PreconditionError) as info:
        round_witness(k4, np.ones(4), 0.5, 0.1)
    assert info.value.ratio == pytest.approx(2.0)


def test_collision_ratio(cu23):
    assert collision_ratio(TRIANGLE, 0.5) == pytest.approx(1.0)


def test_rounding_result_to_dict(cu23):
    data = round_witness(cu23, TRIANGLE, 0.5, 0.01).to_dict()
    assert data["set"] == [0, 1, 2]
    assert data["regime"] == "pipeline"
    assert data["certified"] is True


def test_sweep_respects_density_cap(q3):
    v = VertexSet.of(8, [0, 1, 2, 3, 4]).indicator()
    assert not sweep_low(q3, v, 0.5).found
