"""Command-line front end.

Every run prints a machine-readable report that echoes the resolved
configuration, the tool version, and the numeric tolerances in effect, so
identical invocations produce byte-identical output.  Exit codes: 0 on
success, 1 for validation problems, 2 when a numerical consistency check
fails; errors go to stderr as structured JSON.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .invariants import EPS_ZERO, invariant_report
from .monogamy import (
    CHI_CROSS_CHECK_TOL,
    EIG_NEG_TOL,
    NumericalConsistencyError,
    monogamy_report,
    monogamy_sweep,
    sweep_csv,
)
from .serialize import complex_pair, dumps, format_float
from .slocc import (
    COVARIANCE_TOL,
    INVERTIBILITY_FLOOR,
    classify,
    run_orbit_campaign,
)
from .statekit import (
    DEFAULT_MAX_QUBITS,
    HERMITICITY_TOL,
    NORM_TOL,
    PSD_EIG_TOL,
    RANK_TOL,
    TRACE_TOL,
    dicke_state,
    ghz_state,
    load_state,
    store_state,
    w_state,
)

TOLERANCES = {
    "eps_zero": EPS_ZERO,
    "norm_tol": NORM_TOL,
    "rank_tol": RANK_TOL,
    "hermiticity_tol": HERMITICITY_TOL,
    "trace_tol": TRACE_TOL,
    "psd_eig_tol": PSD_EIG_TOL,
    "covariance_tol": COVARIANCE_TOL,
    "chi_cross_check_tol": CHI_CROSS_CHECK_TOL,
    "eig_neg_tol": EIG_NEG_TOL,
    "invertibility_floor": INVERTIBILITY_FLOOR,
}


class CliUsageError(ValueError):
    """Raised instead of argparse's SystemExit so exit codes stay ours."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(message)


def _add_source_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("state source (exactly one)")
    group.add_argument("--dicke", nargs=2, type=int, metavar=("N", "L"),
                       help="Dicke state with L excitations on N qubits")
    group.add_argument("--ghz", type=int, metavar="N", help="GHZ state on N qubits")
    group.add_argument("--w", type=int, metavar="N", help="W state on N qubits")
    group.add_argument("--in", dest="infile", metavar="FILE",
                       help="load the state from a JSON state file")
    parser.add_argument("--exact", action="store_true",
                        help="carry exact integer amplitudes (reference states only)")


def _add_output_flags(parser: argparse.ArgumentParser, *, formats=("json",)) -> None:
    parser.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=list(formats), default="json",
                        help="output format (default: json)")


def _resolve_state(args):
    """Build the subject state from the source flags; returns
    (state, label, config-fragment, declared Dicke excitation count)."""
    sources = [s for s in ("dicke", "ghz", "w", "infile") if getattr(args, s) is not None]
    if len(sources) != 1:
        raise CliUsageError(
            "exactly one state source is required: --dicke N L, --ghz N, --w N or --in FILE"
        )
    max_n = args.max_n
    exact = args.exact
    if args.dicke is not None:
        n, l = args.dicke
        state = dicke_state(n, l, exact=exact, max_n=max_n)
        return state, f"dicke({n},{l})", {"dicke": [n, l]}, l
    if args.ghz is not None:
        state = ghz_state(args.ghz, exact=exact, max_n=max_n)
        return state, f"ghz({args.ghz})", {"ghz": args.ghz}, None
    if args.w is not None:
        state = w_state(args.w, exact=exact, max_n=max_n)
        return state, f"w({args.w})", {"w": args.w}, 1
    if exact:
        raise CliUsageError("--exact applies to reference states built from flags, not --in")
    state = load_state(args.infile, max_n=max_n)
    return state, f"file:{args.infile}", {"in": args.infile}, None


def _envelope(command: str, config: dict, report) -> dict:
    return {
        "tool": "dickelab",
        "version": __version__,
        "command": command,
        "config": config,
        "tolerances": dict(TOLERANCES),
        "report": report,
    }


def _csv_prelude(command: str, config: dict) -> str:
    lines = [f"# tool=dickelab version={__version__} command={command}"]
    for key, value in config.items():
        lines.append(f"# {key}={value}")
    return "\n".join(lines) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_state(args) -> int:
    state, _, _, _ = _resolve_state(args)
    fmt = "sparse" if args.sparse else "dense"
    if args.out:
        store_state(state, args.out, fmt=fmt)
    else:
        store_state(state, sys.stdout, fmt=fmt)
    return 0


def _invariant_doc(args, *, single_l: int | None) -> dict:
    state, label, source_cfg, _ = _resolve_state(args)
    report = invariant_report(state)
    doc = report.to_jsonable()
    if single_l is not None:
        if not report.d_values:
            raise CliUsageError(f"no discriminants exist below n = 4 (state has n={state.n})")
        if single_l not in report.d_values:
            raise CliUsageError(
                f"--l must lie in 2..{state.n - 2} for n={state.n}, got {single_l}"
            )
        doc["d"] = {str(single_l): doc["d"][str(single_l)]}
        keep = {"tau", f"d_{single_l}"}
        doc["zero_flags"] = {k: v for k, v in doc["zero_flags"].items() if k in keep}
        if "d_exact" in doc:
            doc["d_exact"] = {str(single_l): doc["d_exact"][str(single_l)]}
    config = {"state": label, **source_cfg, "exact": args.exact, "max_n": args.max_n}
    if single_l is not None:
        config["l"] = single_l
    _emit(args, dumps(_envelope(args.command, config, doc)))
    return 0


def _cmd_tau(args) -> int:
    return _invariant_doc(args, single_l=None)


def _cmd_dcrit(args) -> int:
    return _invariant_doc(args, single_l=args.l)


def _cmd_classify(args) -> int:
    state, label, source_cfg, dicke_l = _resolve_state(args)
    verdict = classify(state, subject=label, dicke_l=dicke_l)
    config = {"state": label, **source_cfg, "exact": args.exact, "max_n": args.max_n}
    _emit(args, dumps(_envelope("classify", config, verdict.to_jsonable())))
    return 0


def _cmd_orbit(args) -> int:
    state, label, source_cfg, dicke_l = _resolve_state(args)
    campaign = run_orbit_campaign(
        state, trials=args.trials, seed=args.seed, subject=label, dicke_l=dicke_l
    )
    config = {
        "state": label,
        **source_cfg,
        "trials": args.trials,
        "seed": args.seed,
        "exact": args.exact,
        "max_n": args.max_n,
    }
    _emit(args, dumps(_envelope("orbit", config, campaign.to_jsonable())))
    return 0


def _cmd_monogamy(args) -> int:
    report = monogamy_report(args.n, args.l, max_n=args.max_n)
    config = {"n": args.n, "l": args.l, "max_n": args.max_n}
    _emit(args, dumps(_envelope("monogamy", config, report.to_jsonable())))
    return 0


def _cmd_sweep(args) -> int:
    reports = monogamy_sweep(args.n_min, args.n_max, max_n=args.max_n)
    config = {"n_min": args.n_min, "n_max": args.n_max, "max_n": args.max_n}
    figures = []
    if args.plot_dir:
        from .figures import render_sweep_figures

        figures = [str(p) for p in render_sweep_figures(reports, args.plot_dir)]
        config["plot_dir"] = args.plot_dir
    if args.format == "csv":
        text = _csv_prelude("sweep", config)
        for path in figures:
            text += f"# figure={path}\n"
        text += sweep_csv(reports)
        _emit(args, text)
    else:
        doc = _envelope("sweep", config, {"rows": [r.to_jsonable() for r in reports]})
        if figures:
            doc["figures"] = figures
        _emit(args, dumps(doc))
    return 0


def _cmd_conjecture(args) -> int:
    n = args.n
    if n < 4:
        raise CliUsageError(f"the cross-table needs n >= 4, got n={n}")
    valid = list(range(2, n - 1))
    rows = []
    magnitudes = []
    off_diagonal_all_zero = True
    for l in valid:
        state = dicke_state(n, l, exact=args.exact, max_n=args.max_n)
        report = invariant_report(state)
        row = {
            "l": l,
            "d": {str(k): complex_pair(report.d_values[k]) for k in valid},
            "zero_flags": {str(k): report.zero_flags[f"d_{k}"] for k in valid},
            "diagonal_expected": -1.0 / math.comb(n, l) ** 2,
        }
        if args.exact:
            row["d_exact"] = {str(k): str(report.d_exact[k]) for k in valid}
        rows.append(row)
        magnitudes.append([abs(report.d_values[k]) for k in valid])
        off_diagonal_all_zero &= all(
            report.zero_flags[f"d_{k}"] for k in valid if k != l
        )
    config = {"n": n, "exact": args.exact, "max_n": args.max_n}
    figures = []
    if args.plot_dir:
        from .figures import render_conjecture_figure

        figures = [str(p) for p in render_conjecture_figure(n, valid, valid, magnitudes, args.plot_dir)]
        config["plot_dir"] = args.plot_dir
    report_doc = {
        "k_values": valid,
        "rows": rows,
        "off_diagonal_all_zero": off_diagonal_all_zero,
        # Zero flags alone never prove SLOCC inequivalence between two Dicke
        # states, so the cross-table is reported without a classification.
        "slocc_verdict": "unknown",
    }
    if args.format == "csv":
        text = _csv_prelude("conjecture", config)
        for path in figures:
            text += f"# figure={path}\n"
        text += "l,k,re,im,zero_flag\n"
        for row in rows:
            for k in valid:
                re, im = row["d"][str(k)]
                flag = "true" if row["zero_flags"][str(k)] else "false"
                text += f"{row['l']},{k},{format_float(re)},{format_float(im)},{flag}\n"
        _emit(args, text)
    else:
        doc = _envelope("conjecture", config, report_doc)
        if figures:
            doc["figures"] = figures
        _emit(args, dumps(doc))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="dickelab",
        description="Dicke/GHZ/W states, SLOCC invariants and classification, monogamy reports.",
    )
    parser.add_argument("--version", action="version", version=f"dickelab {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, *, formats=("json",)):
        p.add_argument("--max-n", dest="max_n", type=int, default=DEFAULT_MAX_QUBITS,
                       metavar="CAP", help=f"qubit-count cap (default {DEFAULT_MAX_QUBITS})")
        _add_output_flags(p, formats=formats)

    p = sub.add_parser("state", help="build a reference state and write a state file")
    _add_source_flags(p)
    p.add_argument("--sparse", action="store_true", help="write the sparse file variant")
    common(p)
    p.set_defaults(handler=_cmd_state)

    p = sub.add_parser("tau", help="residual entanglement and discriminant report")
    _add_source_flags(p)
    common(p)
    p.set_defaults(handler=_cmd_tau)

    p = sub.add_parser("dcrit", help="discriminant report, optionally for a single l")
    _add_source_flags(p)
    p.add_argument("--l", type=int, default=None, help="restrict the report to this l")
    common(p)
    p.set_defaults(handler=_cmd_dcrit)

    p = sub.add_parser("classify", help="one-sided SLOCC classification verdict")
    _add_source_flags(p)
    common(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("orbit", help="covariance campaign over random invertible chains")
    _add_source_flags(p)
    p.add_argument("--trials", type=int, default=100, metavar="T")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    common(p)
    p.set_defaults(handler=_cmd_orbit)

    p = sub.add_parser("monogamy", help="concurrence and monogamy gap of one Dicke state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    common(p)
    p.set_defaults(handler=_cmd_monogamy)

    p = sub.add_parser("sweep", help="monogamy table over a range of qubit counts")
    p.add_argument("--n-min", dest="n_min", type=int, default=2)
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--plot-dir", dest="plot_dir", metavar="DIR",
                   help="also render figures into this directory")
    common(p, formats=("json", "csv"))
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("conjecture", help="cross-table of every d_k over every Dicke state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact", action="store_true",
                   help="evaluate the table in exact rational mode")
    p.add_argument("--plot-dir", dest="plot_dir", metavar="DIR",
                   help="also render a heatmap into this directory")
    common(p, formats=("json", "csv"))
    p.set_defaults(handler=_cmd_conjecture)

    return parser


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(dumps({"error": {"kind": kind, "message": message}}))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CliUsageError as exc:
        _emit_error("validation", str(exc))
        return 1
    if getattr(args, "command", None) is None:
        parser.print_help()
        return 1
    try:
        return args.handler(args)
    except NumericalConsistencyError as exc:
        _emit_error("numerical-consistency", str(exc))
        return 2
    except (ValueError, OSError) as exc:
        _emit_error("validation", str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
