"""Command-line interface.

Results go to stdout as compact JSON (or an aligned table with
``--output table``); progress and errors go to stderr through logging.

Exit codes:
    0  success
    1  a verification ran but found a mismatch
    2  a resource bound or search budget was exceeded
    3  invalid input (including bad flags and configuration)
    4  internal assertion or order axiom failure
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any, NoReturn

from .arithmetic.cubes import Cube, cube_forms, discriminant, normalize, orbit_invariants
from .arithmetic.forms import BinaryQuadraticForm, NarrowClass, class_group, narrow_product
from .arithmetic.order import verify_order
from .arithmetic.theta import (
    cube_coefficient,
    kim_coeff_from_content,
    qt_from_cube,
    rho_report,
    verify_e4_cube,
)
from .arithmetic.weyl import (
    default_root_system,
    generic_point,
    harmonic_project,
    invariant_eval,
    laplacian_check,
)
from .config import Config, load_config
from .exceptions import (
    D4ModError,
    InvalidInputError,
    OrderAxiomError,
    ReductionBudgetExceeded,
    ResourceLimitError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_RESOURCE = 2
EXIT_INVALID = 3
EXIT_INTERNAL = 4

Payload = dict[str, Any]
Handler = Callable[[argparse.Namespace, Config], tuple[Payload, bool]]


# =============================================================================
# Argument types
# =============================================================================


def _int_list(text: str, length: int | None = None) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise InvalidInputError(f"expected comma-separated integers, got '{text}'") from e
    if length is not None and len(values) != length:
        raise InvalidInputError(f"expected {length} integers, got {len(values)}")
    return values


def _rational_list(text: str) -> tuple[Fraction, ...]:
    try:
        values = tuple(Fraction(part) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"expected comma-separated rationals, got '{text}'") from e
    if len(values) != 8:
        raise InvalidInputError(f"a point has 8 coordinates, got {len(values)}")
    return values


def _form_json(form: BinaryQuadraticForm) -> list[int]:
    return list(form)


def _class_json(item: NarrowClass) -> Payload:
    return {"sign": item.sign, "form": _form_json(item.form)}


# =============================================================================
# Command handlers
# =============================================================================


def cmd_shell(args: argparse.Namespace, config: Config) -> tuple[Payload, bool]:
    shell = config.shell_store().get(args.norm)
    payload: Payload = {"norm": shell.norm, "count": shell.count}
    if not args.count_only:
        payload["elements"] = shell.vectors.tolist()
    return payload, True


def cmd_cube(args: argparse.Namespace, config: Config) -> tuple[Payload, bool]:
    cube = Cube.parse(args.cube)
    match args.cube_command:
        case "forms":
            forms = cube_forms(cube)
            return {"cube": list(cube.entries), "forms": [_form_json(q) for q in forms], "disc": forms[0].discriminant}, True
        case "disc":
            return {"disc": discriminant(cube)}, True
        case "normalize":
            normal, witness = normalize(cube)
            return {
                "cube": list(cube.entries),
                "normal": list(normal.entries),
                "witness": [[list(row) for row in g] for g in (witness.g1, witness.g2, witness.g3)],
            }, True
        case "orbit":
            invariants = orbit_invariants(cube)
            return {
                "disc": invariants.disc,
                "classes": [_class_json(item) for item in invariants.classes],
                "principal": invariants.class_product() == BinaryQuadraticForm.principal(invariants.disc),
                "narrow_identity": narrow_product(invariants.classes).is_identity(),
            }, True
        case "coeff":
            coefficient = cube_coefficient(cube, config.shell_store(), config.worker_count)
            return {"cube": list(cube.entries), "disc": discriminant(cube), "coefficient": coefficient}, True
        case "qt":
            return {"cube": list(cube.entries), "disc": discriminant(cube), **qt_from_cube(cube).to_json()}, True
    raise InvalidInputError(f"unknown cube command {args.cube_command}")


def cmd_rho(args: argparse.Namespace, config: Config) -> tuple[Payload, bool]:
    diag = _int_list(args.diag, 3)
    result = rho_report((diag[0], diag[1], diag[2]), config.shell_store(), config.worker_count)
    return result.to_json(), True


def cmd_verify(args: argparse.Namespace, config: Config) -> tuple[Payload, bool]:
    if args.verify_command == "order":
        report = verify_order()
        return {
            "basis": report.basis_tag,
            "gram_determinant": report.gram_determinant,
            "roots": report.root_count,
            "checks": list(report.checks),
        }, True
    results = verify_e4_cube(args.max, config.shell_store(), config.worker_count)
    all_match = all(result.match for result in results)
    return {"max": args.max, "cases": [result.to_json() for result in results], "all_match": all_match}, all_match


def cmd_classgroup(args: argparse.Namespace, config: Config) -> tuple[Payload, bool]:
    classes = class_group(args.disc)
    return {
        "disc": args.disc,
        "class_number": len(classes) // 2,
        "narrow_class_number": len(classes),
        "classes": [_class_json(item) for item in classes],
    }, True


def cmd_invariant(args: argparse.Namespace, config: Config) -> tuple[Payload, bool]:
    rep = harmonic_project(args.degree)
    payload: Payload = rep.to_json()
    ok = True
    if args.point is not None:
        point = _rational_list(args.point)
        payload["point"] = [str(value) for value in point]
        payload["value"] = str(invariant_eval(rep, point))
    checks: dict[str, bool] = {}
    if args.check_harmonic:
        checks["harmonic"] = laplacian_check(rep)
    if args.check_invariant:
        checks["invariant"] = _check_invariance(args.degree, args.trials, args.seed)
    if checks:
        payload["checks"] = checks
        ok = all(checks.values())
    return payload, ok


def _check_invariance(degree: int, trials: int, seed: int) -> bool:
    system = default_root_system()
    rep = harmonic_project(degree)
    rng = random.Random(seed)
    points = [generic_point()]
    points += [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)) for _ in range(trials)]
    for point in points:
        value = invariant_eval(rep, point, system)
        root = rng.choice(system.roots)
        if invariant_eval(rep, system.reflect(root, point), system) != value:
            logger.error("degree %d invariant changes under the reflection in %s", degree, root)
            return False
    return True


def cmd_kim(args: argparse.Namespace, config: Config) -> tuple[Payload, bool]:
    return {"content": args.content, "coefficient": kim_coeff_from_content(args.content)}, True


# =============================================================================
# Output
# =============================================================================


def _cell(value: Any) -> str:
    if isinstance(value, list):
        return ",".join(_cell(item) for item in value)
    if isinstance(value, dict):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def format_table(payload: Payload) -> str:
    """Aligned key/value lines, followed by one table per list of records."""
    lines = []
    scalars = {k: v for k, v in payload.items() if not (isinstance(v, list) and v and isinstance(v[0], dict | list))}
    width = max((len(key) for key in scalars), default=0)
    for key, value in scalars.items():
        lines.append(f"{key:<{width}}  {_cell(value)}")
    for key, value in payload.items():
        if key in scalars:
            continue
        lines.append("")
        if isinstance(value[0], list):
            lines.append(f"{key}:")
            lines.extend("  " + " ".join(f"{item:>3}" for item in row) for row in value)
            continue
        columns = list(value[0])
        rows = [[_cell(record.get(column)) for column in columns] for record in value]
        widths = [max(len(column), *(len(row[i]) for row in rows)) for i, column in enumerate(columns)]
        lines.append("  ".join(column.ljust(w) for column, w in zip(columns, widths, strict=True)).rstrip())
        lines.extend("  ".join(cell.ljust(w) for cell, w in zip(row, widths, strict=True)).rstrip() for row in rows)
    return "\n".join(lines)


def render(payload: Payload, output: str) -> str:
    if output == "table":
        return format_table(payload)
    return json.dumps(payload, separators=(",", ":"))


# =============================================================================
# Parser
# =============================================================================


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as invalid input (exit 3)."""

    def error(self, message: str) -> NoReturn:
        raise InvalidInputError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="d4mod", description="Exact arithmetic for D4 modular forms.")
    parser.add_argument("--config", dest="config_file", type=Path, help="key=value configuration file")
    parser.add_argument("--cache-dir", type=Path, help="shell cache directory")
    parser.add_argument("--max-shell-norm", type=int, help="largest shell norm to enumerate")
    parser.add_argument("--workers", dest="worker_count", type=int, help="worker processes for counting loops")
    parser.add_argument("--output", choices=("json", "table"), help="output format")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    shell = commands.add_parser("shell", help="elements of a given norm")
    shell.add_argument("--norm", type=int, required=True)
    shell.add_argument("--count-only", action="store_true")
    shell.set_defaults(handler=cmd_shell)

    cube = commands.add_parser("cube", help="2x2x2 cube invariants and coefficients")
    cube.add_argument("cube_command", choices=("forms", "disc", "normalize", "orbit", "coeff", "qt"))
    cube.add_argument("--cube", required=True, help="c000,c001,c010,c011,c100,c101,c110,c111")
    cube.set_defaults(handler=cmd_cube)

    rho = commands.add_parser("rho", help="Kim's coefficient rho(a1, a2, a3)")
    rho.add_argument("--diag", required=True, help="a1,a2,a3")
    rho.set_defaults(handler=cmd_rho)

    verify = commands.add_parser("verify", help="self-checks")
    verify.add_argument("verify_command", choices=("e4cube", "order"))
    verify.add_argument("--max", type=int, default=2, help="largest pairwise product for e4cube")
    verify.set_defaults(handler=cmd_verify)

    classgroup = commands.add_parser("classgroup", help="narrow classes of a negative discriminant")
    classgroup.add_argument("--disc", type=int, required=True)
    classgroup.set_defaults(handler=cmd_classgroup)

    invariant = commands.add_parser("invariant", help="harmonic W(E8) invariant of a given degree")
    invariant.add_argument("--degree", type=int, required=True)
    invariant.add_argument("--point", help="8 rational order coordinates")
    invariant.add_argument("--check-harmonic", action="store_true")
    invariant.add_argument("--check-invariant", action="store_true")
    invariant.add_argument("--trials", type=int, default=10)
    invariant.add_argument("--seed", type=int, default=0)
    invariant.set_defaults(handler=cmd_invariant)

    kim = commands.add_parser("kim", help="240 sigma3(content)")
    kim.add_argument("--content", type=int, required=True)
    kim.set_defaults(handler=cmd_kim)
    return parser


def _parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    return _build_parser().parse_args(argv)


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    package_logger = logging.getLogger(__package__)
    package_logger.setLevel(level)
    if not package_logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        package_logger.addHandler(handler)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command; returns the process exit code."""
    try:
        args = _parse_args(argv)
        _configure_logging(args)
        config = load_config(
            config_file=args.config_file,
            overrides={
                "cache_dir": args.cache_dir,
                "max_shell_norm": args.max_shell_norm,
                "worker_count": args.worker_count,
                "output": args.output,
            },
        )
        handler: Handler = args.handler
        payload, ok = handler(args, config)
    except InvalidInputError as e:
        logger.error("%s", e)
        return EXIT_INVALID
    except (ResourceLimitError, ReductionBudgetExceeded, OverflowError) as e:
        logger.error("%s", e)
        return EXIT_RESOURCE
    except (OrderAxiomError, AssertionError) as e:
        logger.error("internal check failed: %s", e)
        return EXIT_INTERNAL
    except D4ModError as e:
        logger.error("%s", e)
        return EXIT_INTERNAL

    print(render(payload, config.output))
    return EXIT_OK if ok else EXIT_MISMATCH


if __name__ == "__main__":
    raise SystemExit(main())
