"""Command-line front end.

Subcommands::

    blockpinv pinv      --input E.txt --output X.txt [--partition p,q,s,t] [--method block|direct|alt-lr]
                        [--seed N] [--check] [--tol X]
    blockpinv projector --input E.txt --output P.txt --partition p,q,s,t [--which range|corange] [--seed N]
    blockpinv verify    --input M.txt --candidate X.txt [--classes 1,2,3,4] [--tol X]

A ``key = value`` report goes to stdout.  Exit codes: 0 success, 1
verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
import time
from contextlib import contextmanager

import numpy as np

from .block import alt_LR, block_pinv, build_aux, corange_projector, range_projector, seeded_choices
from .errors import GenInvError
from .geninv import DEFAULT_TOL, parse_classes, penrose_check
from .matrix import BlockPartition, frobenius_norm, split, svd_pinv
from .textfmt import read_matrix, write_matrix

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2

CHECK_TOL = 1e-8


class InputError(Exception):
    pass


class Report:
    def __init__(self, command: str):
        self.lines = [("command", command)]
        self.timings: list[tuple[str, float]] = []

    def add(self, key: str, value) -> None:
        self.lines.append((key, value))

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        yield
        self.timings.append((name, 1e3 * (time.perf_counter() - t0)))

    def emit(self, stream=None) -> None:
        stream = stream or sys.stdout
        for k, v in self.lines:
            print(f"{k} = {v}", file=stream)
        for name, ms in self.timings:
            print(f"time_{name}_ms = {ms:.3f}", file=stream)


def _read(path: str) -> np.ndarray:
    try:
        return read_matrix(path)
    except GenInvError as exc:
        raise InputError(str(exc)) from exc


def _partition(text, E: np.ndarray, required: bool) -> BlockPartition | None:
    if text is None:
        if required:
            raise InputError("--partition p,q,s,t is required for this method")
        return None
    try:
        part = BlockPartition.parse(text)
    except ValueError as exc:
        raise InputError(f"bad --partition: {exc}") from None
    if part.shape != E.shape:
        raise InputError(f"partition {part} gives shape {part.shape}, matrix is {E.shape[0]}x{E.shape[1]}")
    return part


def _choices(seed):
    return {} if seed is None else seeded_choices(seed)


def _warnings_line(flags) -> str:
    return "; ".join(flags) if flags else "none"


def cmd_pinv(args) -> int:
    rep = Report("pinv")
    with rep.stage("read"):
        E = _read(args.input)
    part = _partition(args.partition, E, required=args.method in ("block", "alt-lr"))
    rep.add("method", args.method)
    if part is not None:
        rep.add("partition", str(part))
    rep.add("shape", f"{E.shape[0]}x{E.shape[1]}")
    if args.seed is not None:
        rep.add("seed", args.seed)

    flags: tuple[str, ...] = ()
    with rep.stage("compute"):
        if args.method == "direct":
            X = svd_pinv(E)
        elif args.method == "block":
            res = block_pinv(E, part, seed=args.seed)
            X, flags = res.pinv, res.warnings
        else:
            aux = build_aux(split(E, part), **_choices(args.seed))
            f = alt_LR(aux)
            X, flags = f.L @ E @ f.R, aux.warnings

    with rep.stage("verify"):
        pr = penrose_check(E, X)
        for k, v in (line.split(" = ") for line in pr.as_lines()):
            rep.add(k, v)
        rep.add("max_rel", f"{pr.max_relative:.6e}")
        failed = False
        if args.check:
            rep.add("oracle_gap", f"{frobenius_norm(X - svd_pinv(E)):.6e}")
            failed = pr.max_relative > args.tol
    rep.add("warnings", _warnings_line(flags))

    with rep.stage("write"):
        write_matrix(args.output, X)
    rep.add("output", args.output)
    rep.add("status", "verification-failed" if failed else "ok")
    rep.emit()
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_projector(args) -> int:
    rep = Report("projector")
    with rep.stage("read"):
        E = _read(args.input)
    part = _partition(args.partition, E, required=True)
    rep.add("which", args.which)
    rep.add("partition", str(part))
    rep.add("shape", f"{E.shape[0]}x{E.shape[1]}")
    with rep.stage("compute"):
        aux = build_aux(split(E, part), **_choices(args.seed))
        if args.which == "range":
            P = range_projector(aux)
            defect = frobenius_norm(P @ E - E)
        else:
            P = corange_projector(aux)
            defect = frobenius_norm(E @ P - E)
    rel = defect / max(1.0, frobenius_norm(E))
    herm = frobenius_norm(P - P.conj().T) / max(1.0, frobenius_norm(P))
    idem = frobenius_norm(P @ P - P) / max(1.0, frobenius_norm(P))
    rep.add("rel_fixes_E", f"{rel:.6e}")
    rep.add("rel_hermitian", f"{herm:.6e}")
    rep.add("rel_idempotent", f"{idem:.6e}")
    rep.add("warnings", _warnings_line(aux.warnings))
    failed = max(rel, herm, idem) > args.tol
    with rep.stage("write"):
        write_matrix(args.output, P)
    rep.add("output", args.output)
    rep.add("status", "verification-failed" if failed else "ok")
    rep.emit()
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_verify(args) -> int:
    rep = Report("verify")
    M = _read(args.input)
    X = _read(args.candidate)
    if X.shape != M.shape[::-1]:
        raise InputError(f"candidate shape {X.shape} is not the transpose of matrix shape {M.shape}")
    try:
        classes = parse_classes(args.classes)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    pr = penrose_check(M, X)
    ok = pr.satisfies(classes, args.tol)
    rep.add("classes", ",".join(str(j) for j in sorted(classes)))
    rep.add("tol", f"{args.tol:g}")
    for k, v in (line.split(" = ") for line in pr.as_lines()):
        rep.add(k, v)
    rep.add("member", "yes" if ok else "no")
    rep.add("status", "ok" if ok else "verification-failed")
    rep.emit()
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blockpinv", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pinv", help="Moore-Penrose inverse of a matrix file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--partition")
    p.add_argument("--method", choices=("block", "direct", "alt-lr"), default="block")
    p.add_argument("--seed", type=int, help="draw the block {1}-inverses with this seed")
    p.add_argument("--check", action="store_true", help="compare with the SVD oracle; fail on Penrose residuals > --tol")
    p.add_argument("--tol", type=float, default=CHECK_TOL)
    p.set_defaults(func=cmd_pinv)

    p = sub.add_parser("projector", help="orthogonal projector onto ran(E) or ran(E*)")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--partition")
    p.add_argument("--which", choices=("range", "corange"), default="range")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_projector)

    p = sub.add_parser("verify", help="Penrose residuals of a candidate inverse")
    p.add_argument("--input", required=True, help="matrix M")
    p.add_argument("--candidate", required=True, help="candidate inverse X")
    p.add_argument("--classes", default="1,2,3,4")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "tol", 0.0) < 0:
        print("error: --tol must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
