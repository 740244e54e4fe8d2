"""Plain-text matrix files.

Layout: optional ``#`` comment lines, then a ``rows cols`` header, then
``rows * cols`` lines of ``re im`` in row-major order.  Values are written with
17 significant digits so a write/read cycle is bit-exact.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Union

import numpy as np

from .errors import GenInvError

PathLike = Union[str, Path]


class MatrixParseError(GenInvError, ValueError):
    def __init__(self, source: str, lineno: int, message: str):
        self.source = source
        self.lineno = lineno
        super().__init__(f"{source}:{lineno}: {message}")


def _parse_float(tok: str, source: str, lineno: int) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise MatrixParseError(source, lineno, f"not a decimal number: {tok!r}") from None
    if not math.isfinite(x):
        raise MatrixParseError(source, lineno, f"non-finite value {tok!r}")
    return x


def parse_matrix(text: str, source: str = "<string>") -> np.ndarray:
    lines = text.splitlines()
    i = 0
    while i < len(lines) and (lines[i].lstrip().startswith("#") or not lines[i].strip()):
        i += 1
    if i == len(lines):
        raise MatrixParseError(source, i + 1, "missing 'rows cols' header")
    header = lines[i].split()
    if len(header) != 2:
        raise MatrixParseError(source, i + 1, f"expected 'rows cols', got {lines[i]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixParseError(source, i + 1, f"expected integer dimensions, got {lines[i]!r}") from None
    if rows < 1 or cols < 1:
        raise MatrixParseError(source, i + 1, f"dimensions must be positive, got {rows}x{cols}")

    body = lines[i + 1:]
    n = rows * cols
    # trailing blank lines are tolerated, nothing else is
    while body and not body[-1].strip():
        body.pop()
    if len(body) < n:
        raise MatrixParseError(source, i + 2 + len(body), f"expected {n} entries, found {len(body)}")
    if len(body) > n:
        raise MatrixParseError(source, i + 2 + n, f"unexpected extra content after {n} entries")

    out = np.empty(n, dtype=np.complex128)
    for k, line in enumerate(body):
        lineno = i + 2 + k
        tok = line.split()
        if len(tok) != 2:
            raise MatrixParseError(source, lineno, f"expected 're im', got {line!r}")
        out[k] = complex(_parse_float(tok[0], source, lineno), _parse_float(tok[1], source, lineno))
    return out.reshape(rows, cols)


def read_matrix(path: PathLike) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixParseError(str(path), 0, f"cannot read file: {exc.strerror or exc}") from exc
    return parse_matrix(text, str(path))


def format_matrix(M, comment: str | None = None) -> str:
    M = np.asarray(M, dtype=np.complex128)
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{M.shape[0]} {M.shape[1]}")
    for z in M.ravel():
        out.append(f"{z.real:.16e} {z.imag:.16e}")
    return "\n".join(out) + "\n"


def write_matrix(path: PathLike, M, comment: str | None = None) -> None:
    Path(path).write_text(format_matrix(M, comment))
