"""Seeded corpus of random complex block matrices for regression and acceptance runs.

Sizes ``p, q, s, t`` range over 1..4, ranks sweep from full down to 1, and all
entries satisfy ``|re|, |im| <= 1``.  Every sixth case gets a structural
degeneracy (zero block, zero block row/column, or repeated columns) so that
exactly singular Gram matrices are exercised too.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .matrix import BlockPartition

DEFAULT_SEED = 20240521
DEFAULT_SIZE = 240

_STRUCTURES = ("zero_a", "zero_row_block", "zero_col_block", "repeated_cols", "zero_d", "zero_b_c")


@dataclass(frozen=True, eq=False)
class Case:
    name: str
    E: np.ndarray
    part: BlockPartition
    rank: int


def _complex_uniform(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.uniform(-1, 1, size=shape) + 1j * rng.uniform(-1, 1, size=shape)


def _normalize(E: np.ndarray) -> np.ndarray:
    peak = max(np.abs(E.real).max(), np.abs(E.imag).max())
    return E / peak if peak > 0 else E


def _structured(rng, part: BlockPartition, kind: str) -> np.ndarray:
    p, s, t = part.p, part.s, part.t
    E = _complex_uniform(rng, part.shape)
    if kind == "zero_a":
        E[:p, :s] = 0
    elif kind == "zero_row_block":
        E[p:, :] = 0
    elif kind == "zero_col_block":
        E[:, s:] = 0
    elif kind == "repeated_cols":
        # T lies in ran(S): W = 0 and omega = 0
        E[:, s:] = E[:, :s] @ _complex_uniform(rng, (s, t)) / s
    elif kind == "zero_d":
        E[p:, s:] = 0
    elif kind == "zero_b_c":
        E[:p, s:] = 0
        E[p:, :s] = 0
    return E


def make_case(rng: np.random.Generator, index: int) -> Case:
    p, q, s, t = (int(x) for x in rng.integers(1, 5, size=4))
    part = BlockPartition(p, q, s, t)
    m, n = part.shape
    full = min(m, n)
    if index % 6 == 5:
        kind = _STRUCTURES[(index // 6) % len(_STRUCTURES)]
        E = _normalize(_structured(rng, part, kind))
        return Case(f"case{index:03d}_{kind}", E, part, int(np.linalg.matrix_rank(E)))
    r = full - (index % full)
    E = _complex_uniform(rng, (m, r)) @ _complex_uniform(rng, (r, n))
    E = _normalize(E)
    return Case(f"case{index:03d}_rank{r}", E, part, r)


def generate(size: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED) -> list[Case]:
    rng = np.random.default_rng(seed)
    return [make_case(rng, i) for i in range(size)]


def main(argv=None) -> int:
    from .textfmt import write_matrix

    ap = argparse.ArgumentParser(description="Write the seeded regression corpus as matrix text files.")
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--size", type=int, default=DEFAULT_SIZE)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    with open(args.outdir / "partitions.txt", "w") as fh:
        for case in generate(args.size, args.seed):
            write_matrix(args.outdir / f"{case.name}.txt", case.E, comment=f"partition {case.part}")
            fh.write(f"{case.name} {case.part}\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
