"""Dense complex matrices, 2x2 block plumbing and the SVD pseudoinverse oracle.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every function
here treats its inputs as immutable values and returns fresh arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, SVDConvergenceError

EPS = np.finfo(np.float64).eps


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Return `M` as a nonempty, finite, 2-D ``complex128`` array (copied)."""
    arr = np.array(M, dtype=np.complex128, copy=True)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must have at least one row and column, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return arr


def conj_transpose(M) -> np.ndarray:
    return np.asarray(M).conj().T.copy()


def frobenius_norm(M) -> float:
    return float(np.linalg.norm(M, "fro"))


def singular_values(M) -> np.ndarray:
    try:
        return np.linalg.svd(np.asarray(M, dtype=np.complex128), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SVDConvergenceError(str(exc)) from exc


def default_rank_tol(M, scale: Optional[float] = None) -> float:
    """Relative rank threshold ``max(rows, cols) * eps * scale``.

    `scale` defaults to the largest singular value of `M`.  Callers that know a
    larger reference magnitude (e.g. a Gram matrix derived from a parent
    matrix) pass it explicitly so that rounding noise is not mistaken for rank.
    """
    M = np.asarray(M)
    if scale is None:
        sv = singular_values(M)
        scale = float(sv[0]) if sv.size else 0.0
    return max(M.shape) * EPS * scale


def rank(M, tol: Optional[float] = None) -> int:
    """Number of singular values strictly above `tol`."""
    sv = singular_values(M)
    if tol is None:
        tol = default_rank_tol(M, float(sv[0]) if sv.size else 0.0)
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return int(np.count_nonzero(sv > tol))


def nonzero_condition(M, tol: Optional[float] = None) -> float:
    """Ratio of largest to smallest singular value above `tol` (1.0 for zero matrices)."""
    sv = singular_values(M)
    if tol is None:
        tol = default_rank_tol(M, float(sv[0]) if sv.size else 0.0)
    kept = sv[sv > tol]
    if kept.size == 0:
        return 1.0
    return float(kept[0] / kept[-1])


def svd_pinv(M, rank_tol: Optional[float] = None) -> np.ndarray:
    """Moore-Penrose inverse via the SVD.

    Singular values ``<= rank_tol`` are treated as zero.  The default
    threshold is ``max(rows, cols) * eps * sigma_max``.
    """
    M = as_matrix(M)
    if rank_tol is not None and rank_tol < 0:
        raise ValueError("rank_tol must be nonnegative")
    try:
        U, sv, Vh = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise SVDConvergenceError(str(exc)) from exc
    if rank_tol is None:
        rank_tol = default_rank_tol(M, float(sv[0]))
    keep = sv > rank_tol
    inv_sv = np.zeros_like(sv)
    inv_sv[keep] = 1.0 / sv[keep]
    return (Vh.conj().T * inv_sv) @ U.conj().T


@dataclass(frozen=True)
class BlockPartition:
    """Row split ``p + q`` and column split ``s + t`` of a matrix."""

    p: int
    q: int
    s: int
    t: int

    def __post_init__(self):
        for name in ("p", "q", "s", "t"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
                raise DimensionError(f"block dimension {name} must be a positive integer, got {v!r}")

    @classmethod
    def parse(cls, text: str) -> "BlockPartition":
        """Parse ``"p,q,s,t"``."""
        parts = [x.strip() for x in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"partition must have four comma-separated integers, got {text!r}")
        try:
            values = [int(x) for x in parts]
        except ValueError:
            raise ValueError(f"partition must have four comma-separated integers, got {text!r}") from None
        return cls(*values)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.p + self.q, self.s + self.t)

    def __str__(self) -> str:
        return f"{self.p},{self.q},{self.s},{self.t}"


@dataclass(frozen=True, eq=False)
class Block2x2:
    """Partitioned view ``[[a, b], [c, d]]``; ``a`` is the top-left block."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        if any(np.ndim(x) != 2 for x in (a, b, c, d)):
            raise DimensionError("all blocks must be 2-D")
        if a.shape[0] != b.shape[0] or c.shape[0] != d.shape[0]:
            raise DimensionError(
                f"row counts disagree: a{a.shape} b{b.shape} c{c.shape} d{d.shape}"
            )
        if a.shape[1] != c.shape[1] or b.shape[1] != d.shape[1]:
            raise DimensionError(
                f"column counts disagree: a{a.shape} b{b.shape} c{c.shape} d{d.shape}"
            )

    @property
    def partition(self) -> BlockPartition:
        return BlockPartition(self.a.shape[0], self.c.shape[0], self.a.shape[1], self.b.shape[1])


def split(E, part: BlockPartition) -> Block2x2:
    E = as_matrix(E, "E")
    if E.shape != part.shape:
        raise DimensionError(f"matrix of shape {E.shape} does not match partition {part} -> {part.shape}")
    p, s = part.p, part.s
    return Block2x2(
        E[:p, :s].copy(), E[:p, s:].copy(), E[p:, :s].copy(), E[p:, s:].copy()
    )


def compose(blocks: Block2x2) -> np.ndarray:
    return np.block([[blocks.a, blocks.b], [blocks.c, blocks.d]]).astype(np.complex128)
