"""Command-line front end.

    python -m src.cli bell --n 4 --k 2
    python -m src.cli bell --n 1,1 --d2 1 --format json
    python -m src.cli compose --f fixtures/f_1d.json --g fixtures/g_1d.json --n 3
    python -m src.cli compose --f fixtures/f_2d.json --g fixtures/g_2d.json --all 2
    python -m src.cli compose --f f_1d.json --g g_1d.json --n 3   # looked up in FIXTURES_DIR
    python -m src.cli verify --suite oracle --seed 1 --trials 25
    python -m src.cli verify --suite props --trials 5 --trace
    python -m src.cli table --max-n 4

Results go to stdout, logs to stderr. Exit codes: 0 success, 1 domain or
contract error (or a failed verification), 2 usage error.
"""

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from src.config import get_settings
from src.exceptions import BellFdbError, ContractError, DomainError
from src.models.multiindex import MultiIndex
from src.schemas.fdb import DerivativeEntry, DerivTensorResponse
from src.schemas.polynomial import PolynomialResponse
from src.schemas.series import load_series
from src.services.bell import bell_complete_mv, bell_partial_mv, render_bell_table
from src.services.fdb import get_fdb_service
from src.services.verification import VerificationService

logger = logging.getLogger("src.cli")


def _multi_index(text: str) -> MultiIndex:
    try:
        return MultiIndex.parse(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _series_path(text: str) -> Path:
    """A series file as given, or else relative to the fixtures directory."""
    path = Path(text)
    if not path.exists():
        fallback = Path(get_settings().fixtures_dir) / path
        if fallback.exists():
            return fallback
    return path


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from e
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellfdb",
        description="Multivariate Bell polynomials and the Faa di Bruno formula in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bell = sub.add_parser("bell", help="Render a partial or complete Bell polynomial")
    bell.add_argument("--n", type=_multi_index, required=True, help="multi-index, e.g. 2,1")
    bell.add_argument("--k", type=_multi_index, help="part count; omit for the complete polynomial")
    bell.add_argument("--d2", type=_positive, help="number of variable components (default: dim of k, or 1)")
    bell.add_argument("--format", choices=("text", "json"), default="text")

    compose = sub.add_parser("compose", help="Derivatives of f(g(x)) from series files")
    compose.add_argument("--f", dest="f_file", required=True, help="outer series JSON, expanded at g(center)")
    compose.add_argument("--g", dest="g_file", required=True, help="inner series JSON")
    target = compose.add_mutually_exclusive_group(required=True)
    target.add_argument("--n", type=_multi_index, help="a single multi-index")
    target.add_argument("--all", type=_nonnegative, metavar="N", help="every |n| <= N")
    compose.add_argument("--format", choices=("text", "json"), default="text")

    verify = sub.add_parser("verify", help="Run a randomized verification suite")
    verify.add_argument("--suite", choices=("oracle", "genfun", "props"), required=True)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--trials", type=_positive, default=None)
    verify.add_argument("--trace", action="store_true", help="write the check trace summary to stderr as JSON")

    table = sub.add_parser("table", help="Table of the one-dimensional Bell polynomials")
    table.add_argument("--max-n", dest="max_n", type=_positive, default=4)

    return parser


def cmd_bell(args: argparse.Namespace) -> str:
    if args.k is not None:
        if args.d2 is not None and args.d2 != args.k.dim:
            raise ContractError(
                f"--d2 {args.d2} disagrees with --k {args.k} of dimension {args.k.dim}",
                "d2 = dim(k)",
            )
        poly = bell_partial_mv(args.n, args.k)
    else:
        poly = bell_complete_mv(args.n, args.d2 or 1)
    if args.format == "json":
        return PolynomialResponse.from_poly(poly, args.n, args.k).model_dump_json(indent=2) + "\n"
    return poly.render() + "\n"


def cmd_compose(args: argparse.Namespace) -> str:
    f = load_series(_series_path(args.f_file))
    g = load_series(_series_path(args.g_file))
    engine = get_fdb_service()
    if args.n is not None:
        value = engine.derivative(f, g, args.n)
        if args.format == "json":
            return DerivativeEntry.of(args.n, value).model_dump_json(indent=2) + "\n"
        return ", ".join(str(v) for v in value) + "\n"
    tensor = engine.all(f, g, args.all)
    if args.format == "json":
        return DerivTensorResponse.from_tensor(tensor).model_dump_json(indent=2) + "\n"
    return tensor.render() + "\n"


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    verifier = VerificationService()
    report = asyncio.run(verifier.run_suite(args.suite, args.seed, args.trials))
    if args.trace:
        print(json.dumps(verifier.last_trace, indent=2), file=sys.stderr)
    return report.model_dump_json(indent=2) + "\n", 0 if report.passed else 1


def cmd_table(args: argparse.Namespace) -> str:
    return render_bell_table(args.max_n)


def _describe(error: BellFdbError) -> str:
    if isinstance(error, ContractError) and error.precondition:
        return f"{error} (precondition: {error.precondition})"
    return str(error)


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)

    try:
        if args.command == "verify":
            output, code = cmd_verify(args)
        else:
            handler = {"bell": cmd_bell, "compose": cmd_compose, "table": cmd_table}[args.command]
            output, code = handler(args), 0
    except BellFdbError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {_describe(e)}", file=sys.stderr)
        return 1

    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
