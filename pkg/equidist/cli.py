"""Command-line interface.

Exit codes: 0 pass, 1 criterion failure, 2 usage or config error,
3 precision exhausted.
"""

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

import uvicorn
from pydantic import BaseModel, ValidationError

from . import __version__
from .analysis import oscillation_avg, oscillation_profile, star_discrepancy, ud_test
from .config import EquidistSettings
from .errors import EquidistError, PrecisionExhausted
from .harness import run_experiment, scan_alpha, scan_beta
from .harness.reports import write_csv, write_json
from .mobius import divisor_sum_identity_holds, mobius_sequence, mobius_sieve, squarefree_density
from .models import GenerateResponse, ScanConfig
from .precision import parse_exact
from .sequences import Polynomial, SequenceSpec, generate_power_sequence, parse_key_values, split_top_level, to_exponential

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _int_list(text: str) -> list[int]:
    return [int(part) for part in split_top_level(text)] if text.strip() else []


def _text_list(text: str) -> list[str]:
    return split_top_level(text) if text.strip() else []


# -- output ----------------------------------------------------------------------


def emit(args: argparse.Namespace, payload: BaseModel, rows: Iterable[Mapping[str, Any]]) -> None:
    """Write rows (csv) or the payload (json) to --out, or to stdout."""
    rows = list(rows)
    if args.out:
        path = Path(args.out)
        if args.format == "csv":
            write_csv(path, rows)
        else:
            write_json(path, payload)
        logger.info("Wrote %s", path)
        return
    if args.format == "csv":
        fields: list[str] = []
        for row in rows:
            fields.extend(key for key in row if key not in fields)
        writer = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        sys.stdout.write(payload.model_dump_json(indent=2) + "\n")


def spec_from_args(args: argparse.Namespace) -> SequenceSpec:
    return SequenceSpec.from_mapping(
        {"alpha": args.alpha, "beta": args.beta, "g": args.g, "hs": args.hs, "q_coeffs": args.q}
    )


# -- subcommands -----------------------------------------------------------------


def cmd_gen(args, settings: EquidistSettings) -> int:
    x = generate_power_sequence(spec_from_args(args), args.n, settings)
    payload = GenerateResponse(
        n=args.n,
        values=x.values.tolist(),
        certified_error=x.certified_error,
        path=x.meta.path,
        working_bits=x.meta.working_bits,
        escalations=x.meta.escalations,
        degraded=x.meta.degraded,
    )
    emit(args, payload, ({"n": i, "x": v} for i, v in enumerate(x.values.tolist(), start=1)))
    return EXIT_PASS


def cmd_weyl(args, settings: EquidistSettings) -> int:
    x = generate_power_sequence(spec_from_args(args), args.n, settings)
    checkpoints = _int_list(args.checkpoints) or None
    report = ud_test(x, args.h_max or settings.default_h_max, checkpoints, args.threshold, settings)
    emit(args, report, report.rows())
    logger.info("Weyl: %s (max |S| = %.3e, threshold %.3e)", report.verdict, report.max_magnitude, report.threshold)
    return EXIT_PASS if report.consistent else EXIT_FAIL


def cmd_discrepancy(args, settings: EquidistSettings) -> int:
    x = generate_power_sequence(spec_from_args(args), args.n, settings)
    report = star_discrepancy(x)
    emit(args, report, report.rows())
    logger.info("D*_%d = %.6f", report.n, report.d_star)
    if args.threshold is not None and not report.d_star < args.threshold:
        return EXIT_FAIL
    return EXIT_PASS


def cmd_oscillation(args, settings: EquidistSettings) -> int:
    checkpoints = _int_list(args.checkpoints) or None
    if args.source == "mobius":
        c = mobius_sequence(mobius_sieve(args.n, settings))
    else:
        c = to_exponential(generate_power_sequence(spec_from_args(args), args.n, settings))
    threshold = args.threshold if args.threshold is not None else 0.05

    if args.order:
        ts = [parse_exact(t) for t in _text_list(args.ts)]
        polynomials = [Polynomial.parse(args.p)] if args.p else []
        profile = oscillation_profile(
            c, args.order, ts, checkpoints, strong=bool(polynomials), polynomials=polynomials,
            threshold=threshold, settings=settings,
        )
        rows = [{"phase": r.phase, **entry.model_dump()} for r in profile.reports for entry in r.entries]
        emit(args, profile, rows)
        return EXIT_PASS if profile.oscillating else EXIT_FAIL

    report = oscillation_avg(c, Polynomial.parse(args.p or "0,1/3"), checkpoints, settings)
    emit(args, report, (entry.model_dump() for entry in report.entries))
    logger.info("|avg| against %s at N=%d: %.3e", report.phase, report.checkpoints[-1], report.final_magnitude)
    return EXIT_PASS if report.final_magnitude < threshold else EXIT_FAIL


class MobiusSummary(BaseModel):
    n: int
    divisor_sum_identity: bool
    squarefree_density: float
    table: Optional[str] = None


def cmd_mobius(args, settings: EquidistSettings) -> int:
    table = mobius_sieve(args.n, settings)
    identity = divisor_sum_identity_holds(table, min(args.n, args.identity_limit))
    summary = MobiusSummary(
        n=args.n,
        divisor_sum_identity=identity,
        squarefree_density=squarefree_density(table),
        table=str(table.dump(args.dump)) if args.dump else None,
    )
    emit(args, summary, [summary.model_dump()])
    return EXIT_PASS if identity else EXIT_FAIL


def _scan(args, settings: EquidistSettings, mode: str, scan: Callable) -> int:
    cfg = ScanConfig(
        mode=mode,
        fixed=args.alpha if mode == "beta" else args.beta,
        lo=args.lo,
        hi=args.hi,
        samples=args.samples,
        seed=args.seed,
        bits=args.bits,
        g=args.g,
        extra_g=_text_list(args.extra_g),
        hs=_int_list(args.hs),
        q=args.q,
        n=args.n,
        threshold=args.threshold if args.threshold is not None else 0.05,
        h_max=args.h_max or settings.default_h_max,
        overrides=_text_list(args.overrides),
    )
    report = scan(cfg, settings)
    emit(args, report, report.rows())
    return EXIT_PASS if report.pass_fraction >= args.min_pass_fraction else EXIT_FAIL


def cmd_scan_beta(args, settings: EquidistSettings) -> int:
    return _scan(args, settings, "beta", scan_beta)


def cmd_scan_alpha(args, settings: EquidistSettings) -> int:
    return _scan(args, settings, "alpha", scan_alpha)


# experiment parameters that can be given as ordinary flags
EXPERIMENT_FLAGS = ("n", "seed", "samples", "bits", "threshold", "h_max", "alpha", "beta", "g", "hs", "q")


def cmd_experiment(args, settings: EquidistSettings) -> int:
    overrides: dict[str, Any] = {}
    for key in EXPERIMENT_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    for item in args.set or []:
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = value.strip()
    formats = (args.format,) if args.format_given else ("csv", "json")
    result = run_experiment(args.name, overrides, settings, args.out or settings.report_dir, formats)
    print(f"{result.name}: {'PASS' if result.passed else 'FAIL'} - {result.verdict}")
    return EXIT_PASS if result.passed else EXIT_FAIL


def cmd_serve(args, settings: EquidistSettings) -> int:
    uvicorn.run("equidist.main:app", host=args.host, port=args.port, log_level=settings.log_level.lower())
    return EXIT_PASS


# -- parser ----------------------------------------------------------------------


def _add_spec_flags(parser: argparse.ArgumentParser, beta_required: bool = True) -> None:
    parser.add_argument("--alpha", default="1", help="Nonzero multiplier (exact text, default 1)")
    parser.add_argument("--beta", default=None if beta_required else "3/2", help="Base > 1 (exact text)")
    parser.add_argument("--g", default="1", help="g-expression, e.g. 'x', 'exp(x)', 'pow1m(x,2)'")
    parser.add_argument("--hs", default="", help="Product exponents h1,h2,...")
    parser.add_argument("--q", default="", help="Polynomial coefficients c0,c1,...")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat key = value file; flags override it")
    common.add_argument("--out", help="Output path (experiments: output directory)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--workers", type=int, default=None, help="Process-pool size")

    parser = argparse.ArgumentParser(prog="equidist", description="Certified equidistribution experiments")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    commands: dict[str, argparse.ArgumentParser] = {}

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        commands[name] = p
        return p

    p = add("gen", cmd_gen, "Generate x_n modulo one")
    _add_spec_flags(p)
    p.add_argument("--n", type=int, required=True)

    p = add("weyl", cmd_weyl, "Weyl sums and the u.d. verdict")
    _add_spec_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h-max", type=int, default=None)
    p.add_argument("--checkpoints", default="", help="N1,N2,...")
    p.add_argument("--threshold", type=float, default=None)

    p = add("discrepancy", cmd_discrepancy, "Star discrepancy")
    _add_spec_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threshold", type=float, default=None, help="Exit 1 unless D* < threshold")

    p = add("oscillation", cmd_oscillation, "Oscillation averages against polynomial phases")
    _add_spec_flags(p, beta_required=False)
    p.add_argument("--source", choices=("mobius", "spec"), default="mobius")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", default=None, help="Phase polynomial c0,c1,... (default 0,1/3; with --order it adds a strong-test phase)")
    p.add_argument("--order", type=int, default=None, help="Run the order-m profile instead")
    p.add_argument("--ts", default="sqrt(2)-1,3/7", help="Monomial coefficients t for the profile")
    p.add_argument("--checkpoints", default="")
    p.add_argument("--threshold", type=float, default=None)

    p = add("mobius", cmd_mobius, "Sieve mu(n) and check its identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--identity-limit", type=int, default=10_000)
    p.add_argument("--dump", default=None, help="Write the binary table to this path")

    for name, handler, fixed in (("scan-beta", cmd_scan_beta, "alpha"), ("scan-alpha", cmd_scan_alpha, "beta")):
        p = add(name, handler, f"Scan {name.split('-')[1]} with {fixed} fixed")
        _add_spec_flags(p, beta_required=False)
        p.add_argument("--lo", default="1" if fixed == "alpha" else "0")
        p.add_argument("--hi", default="2" if fixed == "alpha" else "1")
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--bits", type=int, default=128)
        p.add_argument("--n", type=int, default=4096)
        p.add_argument("--threshold", type=float, default=None)
        p.add_argument("--h-max", type=int, default=None)
        p.add_argument("--extra-g", default="", help="Further g-expressions that must all pass")
        p.add_argument("--overrides", default="", help="Exact override values, e.g. 2,phi,silver")
        p.add_argument("--min-pass-fraction", type=float, default=0.95)

    p = add("experiment", cmd_experiment, "Run a named experiment")
    p.add_argument("name")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="Experiment parameter override")
    for flag in EXPERIMENT_FLAGS:
        kind = {"n": int, "seed": int, "samples": int, "bits": int, "h_max": int, "threshold": float}.get(flag, str)
        p.add_argument(f"--{flag.replace('_', '-')}", type=kind, default=None)

    p = add("serve", cmd_serve, "Run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser, commands


# subcommands whose --beta has no default
BETA_REQUIRED = ("gen", "weyl", "discrepancy")


def _apply_config(commands: Mapping[str, argparse.ArgumentParser], command: str, path: str) -> None:
    """Use config file entries as defaults of the subcommand.

    A flag supplied by the config file is no longer required on the command line.
    """
    values = parse_key_values(Path(path).read_text(encoding="utf-8"))
    sub = commands[command]
    known = {action.dest for action in sub._actions}
    unknown = sorted(set(values) - known - {"config"})
    if unknown:
        raise EquidistError(f"unknown keys in {path}: {', '.join(unknown)}")
    values.pop("config", None)
    for action in sub._actions:
        if action.dest in values:
            action.required = False
    sub.set_defaults(**values)


def _config_path(argv: Sequence[str], commands: Mapping[str, argparse.ArgumentParser]) -> tuple[Optional[str], Optional[str]]:
    """(command, --config value) found ahead of the full parse."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    command = next((token for token in argv if token in commands), None)
    return command, known.config


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, commands = build_parser()

    settings = EquidistSettings()
    logging.basicConfig(level=getattr(logging, settings.log_level.upper(), logging.INFO), format=LOG_FORMAT)

    command, config = _config_path(argv, commands)
    if command and config:
        try:
            _apply_config(commands, command, config)
        except (EquidistError, OSError) as e:
            logger.error("%s", e)
            return EXIT_USAGE
    args = parser.parse_args(argv)

    try:
        args.format_given = args.format is not None
        args.format = args.format or "csv"
        if args.workers is not None:
            settings = settings.model_copy(update={"workers": args.workers})
        if args.command in BETA_REQUIRED and args.beta is None:
            parser.error(f"{args.command}: --beta is required")
        return args.handler(args, settings)
    except PrecisionExhausted as e:
        logger.error("Precision exhausted: %s", e)
        return EXIT_PRECISION
    except (EquidistError, ValidationError, ValueError, argparse.ArgumentTypeError, OSError) as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
