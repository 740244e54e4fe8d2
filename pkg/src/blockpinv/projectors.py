"""Orthogonal and oblique projectors, and {1,2}-inverses with prescribed range and null space.

Subspaces are always given as the column space of a generator matrix.  The
columns need not be independent; a single zero column spans ``{0}``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, IllConditionedWarning, NotComplementaryError, NotProjectorError
from .geninv import DEFAULT_TOL, one_inverse, require_member
from .matrix import as_matrix, default_rank_tol, rank, singular_values, svd_pinv

MIN_ANGLE = 1e-6


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Column space of ``generators`` inside ``C^ambient_dim``."""

    generators: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "generators", as_matrix(self.generators, "generators"))

    @classmethod
    def span(cls, *vectors) -> "SubspaceBasis":
        return cls(np.column_stack([np.asarray(v, dtype=np.complex128) for v in vectors]))

    @property
    def ambient_dim(self) -> int:
        return self.generators.shape[0]

    @property
    def dim(self) -> int:
        return rank(self.generators)

    def orthonormal_basis(self) -> np.ndarray:
        """Columns form an orthonormal basis (possibly zero columns wide)."""
        U, sv, _ = np.linalg.svd(self.generators, full_matrices=False)
        tol = default_rank_tol(self.generators, float(sv[0]))
        return U[:, sv > tol]


def _basis(G) -> SubspaceBasis:
    return G if isinstance(G, SubspaceBasis) else SubspaceBasis(G)


def orthogonal_projector(U) -> np.ndarray:
    """Orthogonal projector onto the column space of `U`."""
    Q = _basis(U).orthonormal_basis()
    return Q @ Q.conj().T


def projector_from_13(M, X, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``M X``, the orthogonal projector onto ``ran(M)`` for ``X`` in ``M{1,3}``."""
    M = as_matrix(M, "M")
    X = as_matrix(X, "X")
    require_member(M, X, {1, 3}, tol, "X")
    return M @ X


def projector_from_14(M, X, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``X M``, the orthogonal projector onto ``ran(M*)`` for ``X`` in ``M{1,4}``."""
    M = as_matrix(M, "M")
    X = as_matrix(X, "X")
    require_member(M, X, {1, 4}, tol, "X")
    return X @ M


def complement(P, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``I - P`` for an orthogonal projector `P`."""
    P = as_matrix(P, "P")
    n = P.shape[0]
    if P.shape[1] != n:
        raise DimensionError(f"projector must be square, got {P.shape}")
    scale = max(1.0, float(np.linalg.norm(P, "fro")))
    herm = float(np.linalg.norm(P - P.conj().T, "fro"))
    idem = float(np.linalg.norm(P @ P - P, "fro"))
    if herm > tol * scale or idem > tol * scale:
        raise NotProjectorError(
            f"not an orthogonal projector: ||P*-P|| = {herm:.3e}, ||P^2-P|| = {idem:.3e}"
        )
    return np.eye(n) - P


def _sin_min_angle(Qu: np.ndarray, Qv: np.ndarray) -> float:
    # sine of the smallest principal angle; accurate for nearly aligned subspaces
    if Qu.shape[1] == 0 or Qv.shape[1] == 0:
        return 1.0
    resid = Qu - Qv @ (Qv.conj().T @ Qu)
    return float(np.clip(singular_values(resid)[-1], 0.0, 1.0))


def _check_complementary(U: SubspaceBasis, V: SubspaceBasis, what: str) -> None:
    if U.ambient_dim != V.ambient_dim:
        raise DimensionError(f"{what}: ambient dimensions differ ({U.ambient_dim} vs {V.ambient_dim})")
    N = U.ambient_dim
    du, dv = U.dim, V.dim
    joint = rank(np.hstack([U.generators, V.generators]))
    if du + dv != N or joint != N:
        raise NotComplementaryError(
            f"{what}: dims {du} + {dv} with joint rank {joint} do not give a direct sum of C^{N}"
        )
    angle = np.arcsin(_sin_min_angle(U.orthonormal_basis(), V.orthonormal_basis()))
    if angle < MIN_ANGLE:
        warnings.warn(
            f"{what}: smallest principal angle {angle:.3e} below {MIN_ANGLE:g}",
            IllConditionedWarning,
            stacklevel=3,
        )


def oblique_projector(U, V) -> np.ndarray:
    """Projector onto ``ran(U)`` along ``ran(V)``, computed as ``[(I - P_V) P_U]^+``."""
    U, V = _basis(U), _basis(V)
    _check_complementary(U, V, "oblique_projector")
    N = U.ambient_dim
    return svd_pinv((np.eye(N) - orthogonal_projector(V)) @ orthogonal_projector(U))


def null_space_basis(M) -> SubspaceBasis:
    """Generators of ``nul(M)``; a single zero column when `M` is injective."""
    M = as_matrix(M, "M")
    n = M.shape[1]
    _, sv, Vh = np.linalg.svd(M, full_matrices=True)
    r = int(np.count_nonzero(sv > default_rank_tol(M, float(sv[0]))))
    if r == n:
        return SubspaceBasis(np.zeros((n, 1)))
    return SubspaceBasis(Vh[r:].conj().T)


def constrained_inverse(M, V, U, m_one: Optional[np.ndarray] = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The {1,2}-inverse of `M` with range ``ran(V)`` and null space ``ran(U)``.

    Evaluated as ``P[ran V, nul M] @ M1 @ P[ran M, U]`` for a {1}-inverse ``M1``
    (default: the SVD pseudoinverse).  Requires ``ran(M) + U = C^m`` and
    ``nul(M) + V = C^n`` as direct sums.
    """
    M = as_matrix(M, "M")
    m, n = M.shape
    V, U = _basis(V), _basis(U)
    if V.ambient_dim != n or U.ambient_dim != m:
        raise DimensionError(
            f"for M of shape {M.shape}, V must live in C^{n} and U in C^{m}; "
            f"got C^{V.ambient_dim} and C^{U.ambient_dim}"
        )
    ran_m = SubspaceBasis(M)
    nul_m = null_space_basis(M)
    _check_complementary(ran_m, U, "constrained_inverse ran(M) + U")
    _check_complementary(V, nul_m, "constrained_inverse V + nul(M)")
    if m_one is None:
        m_one = one_inverse(M)
    else:
        m_one = as_matrix(m_one, "m_one")
        if m_one.shape != (n, m):
            raise DimensionError(f"m_one has shape {m_one.shape}, expected {(n, m)}")
        require_member(M, m_one, {1}, tol, "m_one")
    left = svd_pinv((np.eye(n) - orthogonal_projector(nul_m)) @ orthogonal_projector(V))
    right = svd_pinv((np.eye(m) - orthogonal_projector(U)) @ orthogonal_projector(ran_m))
    return left @ m_one @ right
