"""Penrose equations, {1}-inverses and Urquhart's constructions.

For ``M`` of shape ``(m, n)`` a candidate ``X`` has shape ``(n, m)`` and the
four Penrose equations are

    (1) M X M = M    (2) X M X = X    (3) (M X)* = M X    (4) (X M)* = X M

``M{1,3}`` etc. denote the sets of matrices satisfying the listed equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import DimensionError, MembershipError
from .matrix import as_matrix, frobenius_norm, svd_pinv

DEFAULT_TOL = 1e-9

_ALL = frozenset({1, 2, 3, 4})


def parse_classes(spec) -> frozenset[int]:
    """Normalize an inverse class like ``"1,2,4"`` or ``{1, 3}`` to a frozenset."""
    if isinstance(spec, str):
        items = [x.strip() for x in spec.replace("{", "").replace("}", "").split(",") if x.strip()]
        try:
            cls = frozenset(int(x) for x in items)
        except ValueError:
            raise ValueError(f"invalid inverse class {spec!r}") from None
    else:
        cls = frozenset(int(x) for x in spec)
    if not cls or not cls <= _ALL:
        raise ValueError(f"inverse class must be a nonempty subset of {{1,2,3,4}}, got {spec!r}")
    return cls


@dataclass(frozen=True)
class PenroseReport:
    """Frobenius residuals of the four Penrose equations for a pair ``(M, X)``."""

    r1: float
    r2: float
    r3: float
    r4: float
    scale_m: float
    scale_x: float

    @property
    def residuals(self) -> tuple[float, float, float, float]:
        return (self.r1, self.r2, self.r3, self.r4)

    @property
    def scale(self) -> float:
        return max(1.0, self.scale_m, self.scale_x)

    def relative(self) -> tuple[float, float, float, float]:
        """Residuals divided by ``max(1, ||M||_F, ||X||_F)``."""
        s = self.scale
        return tuple(r / s for r in self.residuals)

    @property
    def max_relative(self) -> float:
        return max(self.relative())

    def satisfies(self, cls: Iterable[int] = _ALL, tol: float = DEFAULT_TOL) -> bool:
        if tol < 0:
            raise ValueError("tol must be nonnegative")
        cls = parse_classes(cls)
        bound = tol * self.scale
        return all(self.residuals[j - 1] <= bound for j in cls)

    def as_lines(self) -> list[str]:
        rel = self.relative()
        lines = [f"r{j} = {r:.6e}" for j, r in enumerate(self.residuals, 1)]
        lines += [f"rel_r{j} = {r:.6e}" for j, r in enumerate(rel, 1)]
        lines += [f"scale_m = {self.scale_m:.6e}", f"scale_x = {self.scale_x:.6e}"]
        return lines


def penrose_check(M, X) -> PenroseReport:
    M = as_matrix(M, "M")
    X = as_matrix(X, "X")
    if X.shape != M.shape[::-1]:
        raise DimensionError(f"candidate shape {X.shape} must be the transpose of {M.shape}")
    MX = M @ X
    XM = X @ M
    return PenroseReport(
        r1=frobenius_norm(MX @ M - M),
        r2=frobenius_norm(XM @ X - X),
        r3=frobenius_norm(MX.conj().T - MX),
        r4=frobenius_norm(XM.conj().T - XM),
        scale_m=frobenius_norm(M),
        scale_x=frobenius_norm(X),
    )


def is_member(M, X, cls=_ALL, tol: float = DEFAULT_TOL) -> bool:
    """True iff `X` satisfies each Penrose equation in `cls` up to ``tol * max(1, ||M||, ||X||)``."""
    return penrose_check(M, X).satisfies(cls, tol)


def require_member(M, X, cls, tol: float = DEFAULT_TOL, what: str = "matrix") -> None:
    report = penrose_check(M, X)
    if not report.satisfies(cls, tol):
        eqs = ",".join(str(j) for j in sorted(parse_classes(cls)))
        raise MembershipError(
            f"{what} is not a {{{eqs}}}-inverse at tol {tol:g}: relative residuals "
            + ", ".join(f"{r:.3e}" for r in report.relative())
        )


def one_inverse(M, rank_tol: Optional[float] = None) -> np.ndarray:
    """A {1}-inverse of `M`; realized as the SVD pseudoinverse."""
    return svd_pinv(M, rank_tol)


def _unit_disc(rng: np.random.Generator, shape) -> np.ndarray:
    r = np.sqrt(rng.uniform(0.0, 1.0, size=shape))
    phase = rng.uniform(0.0, 2.0 * np.pi, size=shape)
    return r * np.exp(1j * phase)


def one_inverse_sample(M, seed: int, rank_tol: Optional[float] = None) -> np.ndarray:
    """A seeded random element of ``M{1}``.

    Uses the parametrization ``X0 + (I - X0 M) U + V (I - M X0)`` with
    ``X0 = M^+`` and ``U``, ``V`` drawn i.i.d. uniform on the complex unit disc
    from a PCG64 generator seeded with `seed`.
    """
    M = as_matrix(M, "M")
    m, n = M.shape
    X0 = svd_pinv(M, rank_tol)
    rng = np.random.default_rng(seed)
    U = _unit_disc(rng, (n, m))
    V = _unit_disc(rng, (n, m))
    return X0 + (np.eye(n) - X0 @ M) @ U + V @ (np.eye(m) - M @ X0)


def urquhart_124(M, g_inv, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``M* G1`` for ``G1`` in ``(M M*){1}``; the result lies in ``M{1,2,4}``."""
    M = as_matrix(M, "M")
    g_inv = as_matrix(g_inv, "g_inv")
    require_member(M @ M.conj().T, g_inv, {1}, tol, "g_inv for M M*")
    return M.conj().T @ g_inv


def urquhart_123(M, h_inv, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``H1 M*`` for ``H1`` in ``(M* M){1}``; the result lies in ``M{1,2,3}``."""
    M = as_matrix(M, "M")
    h_inv = as_matrix(h_inv, "h_inv")
    require_member(M.conj().T @ M, h_inv, {1}, tol, "h_inv for M* M")
    return h_inv @ M.conj().T


def urquhart_mpi(M, L, R, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``L M R``, which equals ``M^+`` for any ``L`` in ``M{1,4}`` and ``R`` in ``M{1,3}``."""
    M = as_matrix(M, "M")
    L = as_matrix(L, "L")
    R = as_matrix(R, "R")
    require_member(M, L, {1, 4}, tol, "L")
    require_member(M, R, {1, 3}, tol, "R")
    return L @ M @ R
