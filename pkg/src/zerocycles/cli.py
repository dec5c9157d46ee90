"""Command-line entry point: ``zerocycles chow | verify | snf``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input or usage.
Data goes to stdout; progress and errors go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import chowcore, depezzo, intlat
from .ffgeom import SchemeSpec

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zerocycles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="text")

    chow = sub.add_parser("chow", parents=[fmt], help="Chow group of a regular-model JSON")
    src = chow.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", type=Path, help="model JSON file")
    src.add_argument("--builtin-fixture", action="store_true",
                     help="use the built-in quartic del Pezzo model")

    ver = sub.add_parser("verify", parents=[fmt], help="run the finite-field verification suite")
    ver.add_argument("--p", type=int, default=3)
    ver.add_argument("--e-max", type=int, default=2)
    ver.add_argument("--d", type=int, default=None)
    ver.add_argument("--beta", type=int, default=1)
    ver.add_argument("--gamma", type=int, default=1)
    ver.add_argument("--model", type=Path, help="scheme JSON for an ad-hoc singularity scan")
    ver.add_argument("-v", "--verbose", action="store_true", help="debug-level progress")

    snf = sub.add_parser("snf", parents=[fmt], help="Smith normal form of an integer matrix")
    snf.add_argument("--matrix", type=Path, required=True,
                     help='matrix file: "rows cols" then entries, or JSON')
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None


def _emit(obj: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _cmd_chow(args) -> int:
    if args.builtin_fixture:
        model = chowcore.paper_fixture()
    else:
        model = chowcore.RegularModelData.from_json(_read(args.model))
    res = chowcore.chow_zero_cycles(model)
    text = (
        f"free_rank: {res.free_rank}\n"
        f"invariant_factors: {list(res.invariant_factors)}\n"
        f"Chow group A0(X)_0: {res.describe()}\n"
        f"columns of degree 0: {sum(res.columns_degree_zero)}/{len(res.columns_degree_zero)}\n"
    )
    _emit(res.to_json_obj(), text, args.format)
    return EXIT_OK


def _cmd_verify(args) -> int:
    log = logging.getLogger("zerocycles")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.DEBUG if args.verbose else logging.INFO)
    try:
        return _run_verify(args)
    finally:
        log.removeHandler(handler)


def _run_verify(args) -> int:
    params = depezzo.ModelParams(p=args.p, e_max=args.e_max, d=args.d,
                                 beta=args.beta, gamma=args.gamma)
    if args.model is not None:
        consts = {"d": params.d, "beta": params.beta, "gamma": params.gamma}
        scheme = SchemeSpec.from_json(_read(args.model), consts)
        report = depezzo.verify_scheme(scheme, params)
    else:
        report = depezzo.run_all(params)
    _emit(report.to_json_obj(), report.to_text(), args.format)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_snf(args) -> int:
    m = intlat.IntMatrix.parse(_read(args.matrix))
    res = intlat.snf(m)
    coker = intlat.cokernel(m)
    obj = {
        "rows": m.rows,
        "cols": m.cols,
        "diagonal": list(res.diagonal),
        "rank": res.rank,
        "free_rank": coker.free_rank,
        "invariant_factors": list(coker.invariant_factors),
    }
    tors = " x ".join(f"Z/{d}" for d in coker.invariant_factors)
    parts = ([f"Z^{coker.free_rank}"] if coker.free_rank else []) + ([tors] if tors else [])
    text = (
        f"diagonal: {' '.join(map(str, res.diagonal))}\n"
        f"rank: {res.rank}\n"
        f"cokernel: {' + '.join(parts) or '0'}\n"
    )
    _emit(obj, text, args.format)
    return EXIT_OK


_COMMANDS = {"chow": _cmd_chow, "verify": _cmd_verify, "snf": _cmd_snf}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except chowcore.ModelValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
