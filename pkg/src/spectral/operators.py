"""
Spectral Operators

Normalized adjacency, its eigendecomposition, and top-eigenspace projectors.
Eigenvectors are stored orthonormal under the expectation inner product
<u, v> = (1/n) sum u_i v_i, so entries are O(1) (hypercube characters are ±1).
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from config import config
from errors import DimensionError, DomainError, NumericalError
from graphs.core import Graph

logger = logging.getLogger(__name__)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SymmetricOperator:
    """Dense symmetric n x n real matrix"""
    n: int
    entries: np.ndarray

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "SymmetricOperator":
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {matrix.shape}")
        if not np.array_equal(matrix, matrix.T):
            gap = float(np.max(np.abs(matrix - matrix.T)))
            raise DomainError(f"matrix is not symmetric (max |a_ij - a_ji| = {gap:.3e})")
        return cls(n=matrix.shape[0], entries=_frozen(matrix))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.entries @ v


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Full eigendecomposition, eigenvalues descending"""
    eigenvalues: np.ndarray        # (n,)
    eigenvectors: np.ndarray       # (n, n), column i pairs with eigenvalues[i]
    residual: float

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    def reconstruct(self) -> np.ndarray:
        """(1/n) sum λ_i u_i u_i^T"""
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.T / self.n

    def distinct(self, tol: float = 1e-9) -> list[tuple[float, int]]:
        """Distinct eigenvalues with multiplicities, descending"""
        groups: list[tuple[float, int]] = []
        for lam in self.eigenvalues:
            if groups and abs(groups[-1][0] - lam) <= tol:
                value, count = groups[-1]
                groups[-1] = (value, count + 1)
            else:
                groups.append((float(lam), 1))
        return groups


@dataclass(frozen=True, eq=False)
class Projector:
    """Orthogonal projector P_λ onto the top eigenspace V_λ"""
    threshold: float
    matrix: np.ndarray            # (n, n)
    dimension: int
    basis: np.ndarray             # (n, dimension), expectation-orthonormal

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def sample_range(self, rng: np.random.Generator, count: int = 1) -> np.ndarray:
        """count random vectors of V_λ as rows, Gaussian in the eigenbasis"""
        if self.dimension == 0:
            return np.zeros((count, self.n))
        coeffs = rng.standard_normal((count, self.dimension))
        return coeffs @ self.basis.T

    def deviations(self) -> dict[str, float]:
        """Distances from the projector laws"""
        P = self.matrix
        n = self.n
        eig = np.linalg.eigvalsh(P) if n else np.zeros(0)
        eig_gap = float(np.max(np.minimum(np.abs(eig), np.abs(eig - 1.0)))) if n else 0.0
        return {
            "idempotence_frobenius": float(np.linalg.norm(P @ P - P)),
            "symmetry_frobenius": float(np.linalg.norm(P - P.T)),
            "eigenvalue_distance": eig_gap,
            # range ⟂ null space: P(I - P) = 0
            "orthogonality_frobenius": float(np.linalg.norm(P @ (np.eye(n) - P))),
        }


def normalized_adjacency(G: Graph) -> SymmetricOperator:
    """A_ij = 1/d when {i, j} is an edge, else 0"""
    A = np.zeros((G.n, G.n))
    rows = np.repeat(np.arange(G.n), G.d)
    A[rows, G.neighbor_array.ravel()] = 1.0 / G.d
    return SymmetricOperator(n=G.n, entries=_frozen(A))


def eigendecompose(A: SymmetricOperator, tolerance: Optional[float] = None) -> Spectrum:
    """
    Exact dense symmetric eigendecomposition

    Raises NumericalError when the residual max_i ||A u_i - λ_i u_i||_2
    (expectation norm) exceeds the tolerance.
    """
    tolerance = config.eigen_tolerance if tolerance is None else tolerance
    M = A.entries
    n = A.n

    try:
        values, vectors = scipy.linalg.eigh(M)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"eigensolver failed: {e}") from e

    # scipy returns ascending; flip to descending
    values = values[::-1].copy()
    vectors = vectors[:, ::-1] * np.sqrt(n)

    residual_vectors = M @ vectors - vectors * values
    residual = float(np.max(np.sqrt(np.mean(residual_vectors ** 2, axis=0)))) if n else 0.0
    if residual > tolerance:
        raise NumericalError("eigendecomposition residual above tolerance", residual)

    logger.debug(f"Eigendecomposition n={n}: λ_max={values[0]:.6f}, λ_min={values[-1]:.6f}, "
                 f"residual={residual:.2e}")
    return Spectrum(eigenvalues=_frozen(values), eigenvectors=_frozen(vectors), residual=residual)


def top_eigenspace(spec: Spectrum, lam: float, tie_tolerance: Optional[float] = None) -> Projector:
    """
    Projector onto the span of eigenvectors with eigenvalue >= λ

    Eigenvalues within tie_tolerance below λ are included.
    """
    if not -1.0 <= lam <= 1.0:
        raise DomainError(f"threshold must lie in [-1, 1], got {lam}")
    tie_tolerance = config.threshold_tolerance if tie_tolerance is None else tie_tolerance

    keep = spec.eigenvalues >= lam - tie_tolerance
    basis = spec.eigenvectors[:, keep]
    P = basis @ basis.T / spec.n
    P = (P + P.T) / 2.0
    return Projector(
        threshold=float(lam),
        matrix=_frozen(P),
        dimension=int(np.count_nonzero(keep)),
        basis=_frozen(basis),
    )


def projector_for(G: Graph, lam: float) -> Projector:
    """Shortcut: P_λ of G's normalized adjacency"""
    return top_eigenspace(eigendecompose(normalized_adjacency(G)), lam)


def random_symmetric(n: int, seed: int) -> np.ndarray:
    """Seeded random symmetric matrix with standard normal entries"""
    if n < 1:
        raise DomainError(f"dimension must be positive, got {n}")
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n))
    return (X + X.T) / 2.0
