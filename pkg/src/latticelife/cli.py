"""Command-line interface.

Subcommands: ``run`` (one mode over one or more cutoffs), ``reproduce-paper``
(full three-mode sweep plus the ordering report), ``verify`` (the oracle
cross-check battery) and ``spectrum`` (eigenvalues of the level matrix).

Exit codes: 0 success, 1 assertion/ordering failure, 2 numerical error,
3 bad arguments. Numerical errors also emit one machine-readable JSON line
on stderr.
"""

import argparse
import json
import sys
from pathlib import Path

from .amplitudes import LatticeParams
from .errors import LatticeLifeError
from .experiment import (
    DEFAULT_CUTOFFS,
    DEFAULT_DIMENSION,
    DEFAULT_HALF_BARE_MASS_SQ,
    DEFAULT_HORIZON,
    ExperimentConfig,
    RUN_MODES,
    mode_spec,
    reproduce_reference,
    run_experiment,
)
from .halfline import build_M, solve_u
from .oracle import standard_checks
from .report import spectrum_document

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_NUMERICAL = 2
EXIT_BAD_ARGS = 3


class _UsageError(Exception):
    """Argument problem detected after parsing (e.g. a missing required
    setting that could have come from the config file)."""


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for
    numerical failures, so remap bad arguments to 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_ARGS, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="latticelife", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--N", action="append", type=int, metavar="N",
                       help="cutoff (repeatable; default 5 9 13)")
        p.add_argument("--a2m2-half", type=float, default=None, dest="a2m2_half",
                       help="bare-mass combination a^2 m^2 / 2 (default 0.1)")
        p.add_argument("--dim", type=int, default=None,
                       help="spacetime dimension (default 1)")
        p.add_argument("--horizon", type=int, default=None,
                       help="survival-curve horizon in steps (default 10000)")
        p.add_argument("--out", type=Path, default=None,
                       help="output directory (default latticelife-out)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="table format (default csv)")
        p.add_argument("--plot", action=argparse.BooleanOptionalAction, default=None,
                       help="emit SVG figures (default on)")
        p.add_argument("--death-state", type=int, default=None, dest="death_state",
                       help="1-based level index of the absorbing state (default 1)")
        p.add_argument("--config", type=Path, default=None,
                       help="key = value config file; explicit flags win")

    run_p = sub.add_parser("run", help="run one mode and write its artifacts")
    run_p.add_argument("--mode", choices=RUN_MODES, default=None)
    add_common(run_p)

    rep_p = sub.add_parser("reproduce-paper",
                           help="run all three modes at N = 5, 9, 13 and check the orderings")
    add_common(rep_p)

    sub.add_parser("verify", help="run the oracle cross-check battery")

    spec_p = sub.add_parser("spectrum", help="print level-matrix eigenvalues as JSON")
    spec_p.add_argument("--mode", choices=RUN_MODES, default=None)
    add_common(spec_p)

    return parser


_CONFIG_KEYS = {
    "mode": "mode",
    "N": "N",
    "a2m2-half": "a2m2_half",
    "dim": "dim",
    "horizon": "horizon",
    "out": "out",
    "format": "format",
    "plot": "plot",
    "death-state": "death_state",
}


def _read_config(path: Path) -> dict:
    values = {}
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in _CONFIG_KEYS:
            raise ValueError(f"bad config line: {raw.strip()!r}")
        values[_CONFIG_KEYS[key]] = value
    return values


def _coerce(name: str, value: str):
    if name == "N":
        return [int(tok) for tok in value.replace(",", " ").split()]
    if name in ("dim", "horizon", "death_state"):
        return int(value)
    if name == "a2m2_half":
        return float(value)
    if name == "plot":
        return value.lower() in ("1", "true", "yes", "on")
    if name == "out":
        return Path(value)
    return value


def _merge_settings(args) -> dict:
    """defaults < config file < explicit flags."""
    settings = {
        "mode": getattr(args, "mode", None),
        "N": args.N,
        "a2m2_half": args.a2m2_half,
        "dim": args.dim,
        "horizon": args.horizon,
        "out": args.out,
        "format": args.format,
        "plot": args.plot,
        "death_state": args.death_state,
    }
    if args.config is not None:
        from_file = _read_config(args.config)
        for name, raw in from_file.items():
            if settings.get(name) is None:
                settings[name] = _coerce(name, raw)
    defaults = {
        "mode": None,
        "N": list(DEFAULT_CUTOFFS),
        "a2m2_half": DEFAULT_HALF_BARE_MASS_SQ,
        "dim": DEFAULT_DIMENSION,
        "horizon": DEFAULT_HORIZON,
        "out": Path("latticelife-out"),
        "format": "csv",
        "plot": True,
        "death_state": 1,
    }
    for name, fallback in defaults.items():
        if settings.get(name) is None:
            settings[name] = fallback
    return settings


def _cmd_run(args) -> int:
    settings = _merge_settings(args)
    if settings["mode"] is None:
        raise _UsageError("run requires --mode (or mode = ... in the config file)")
    cfg = ExperimentConfig(
        mode=settings["mode"],
        cutoffs=tuple(settings["N"]),
        half_bare_mass_sq=settings["a2m2_half"],
        dimension=settings["dim"],
        horizon=settings["horizon"],
        out_dir=settings["out"],
        table_format=settings["format"],
        plot=settings["plot"],
        death_state_index=settings["death_state"],
    )
    for path in run_experiment(cfg):
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    settings = _merge_settings(args)
    written, document = reproduce_reference(
        out_dir=settings["out"],
        cutoffs=tuple(settings["N"]),
        half_bare_mass_sq=settings["a2m2_half"],
        dimension=settings["dim"],
        horizon=settings["horizon"],
        table_format=settings["format"],
        plot=settings["plot"],
    )
    for path in written:
        print(f"wrote {path}")
    for comparison in document["comparisons"]:
        means = comparison["mean_life_expectancy"]
        print(
            f"N={comparison['N']}: {comparison['ordering']} "
            f"(means {means['quantum1']:.6g} / {means['quantum1-sp']:.6g} / "
            f"{means['realquantum1']:.6g})"
        )
    for claim, held in document["claims"].items():
        print(f"claim {claim}: {'holds' if held else 'FAILED'}")
    return EXIT_OK if document["pass"] else EXIT_CLAIM_FAILED


def _cmd_verify(_args) -> int:
    checks = standard_checks()
    failed = 0
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status}  {check.name}  observed={check.observed:.3e}  tol={check.tolerance:.0e}")
        failed += 0 if check.passed else 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_CLAIM_FAILED


def _cmd_spectrum(args) -> int:
    settings = _merge_settings(args)
    run_mode = settings["mode"] or "quantum1"
    spec = mode_spec(run_mode)
    params = LatticeParams.derive(spec, settings["a2m2_half"], settings["dim"])
    documents = []
    for cutoff in sorted(settings["N"]):
        hlv = solve_u(build_M(spec, params.eta, cutoff))
        documents.append(spectrum_document(run_mode, cutoff, params.eta, hlv))
    text = json.dumps(documents, indent=2)
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{run_mode}_spectrum.json"
        path.write_text(text + "\n")
        print(f"wrote {path}")
    else:
        print(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "reproduce-paper": _cmd_reproduce,
        "verify": _cmd_verify,
        "spectrum": _cmd_spectrum,
    }
    try:
        return handlers[args.command](args)
    except _UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except (LatticeLifeError, ValueError, OSError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
