"""Command-line entry point: ``trendfair <subcommand> [flags]``.

Exit codes: 0 success, 2 usage or validation error, 3 I/O error,
4 input data violating the CSV schema.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import re
import sys
from pathlib import Path

from . import analysis, experiment, presets, simlab
from .model import AgentParams, EconomyState
from .oracle import GridSpec, grid_argmax
from .solver import solve

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_SCHEMA = 4

SEED_ENV = "TRENDFAIR_SEED"

_FIELD_FLAGS = {
    "a": "--a", "b": "--b", "eta": "--eta",
    "w_i": "--wi", "w_j": "--wj", "d_i": "--di", "d_j": "--dj", "t_pot": "--tax",
}


class UsageError(Exception):
    pass


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_table(columns, rows, fmt, out):
    rows = [[_fmt(v) for v in row] for row in rows]
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return
    widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(columns)]
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for r in rows:
        out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def _build(cls, **kwargs):
    """Construct a validated value, naming the offending flag on failure."""
    try:
        return cls(**kwargs)
    except ValueError as e:
        msg = str(e)
        field = msg.split(" ", 1)[0]
        flag = _FIELD_FLAGS.get(field)
        raise UsageError(f"{flag}: {msg}" if flag else msg) from None


def _agent(args):
    return _build(AgentParams, a=args.a, b=args.b, eta=args.eta)


def _econ(args):
    return _build(EconomyState, w_i=args.wi, w_j=args.wj, d_i=args.di, d_j=args.dj, t_pot=args.tax)


# --- subcommands -------------------------------------------------------------

def cmd_solve(args, out):
    agent, econ = _agent(args), _econ(args)
    res = solve(agent, econ)
    th = res.thresholds
    rows = [
        ("s_star", res.s_star),
        ("region", res.region.value),
        ("s_unclamped", res.s_unclamped),
        ("giving", res.giving),
        ("threshold_h", th.h),
        ("threshold_u", th.u_bound),
        ("threshold_l", th.l_bound),
    ]
    if args.grid_check:
        s_grid, _ = grid_argmax(agent, econ, GridSpec())
        rows += [("s_grid", s_grid), ("grid_gap", abs(s_grid - res.s_star))]
    write_table(("quantity", "value"), rows, args.format, out)


def cmd_sweep(args, out):
    ranged = [args.vary, args.start, args.stop, args.step]
    if args.preset and any(v is not None for v in ranged):
        raise UsageError("--preset cannot be combined with --vary/--from/--to/--step")
    if args.preset:
        columns, rows = presets.preset_rows(args.preset)
    else:
        if any(v is None for v in ranged):
            raise UsageError("either --preset or all of --vary, --from, --to, --step are required")
        try:
            values = presets.grid(args.start, args.stop, args.step)
        except ValueError as e:
            raise UsageError(f"--from/--to/--step: {e}") from None
        columns, rows = presets.sweep_rows(
            _agent(args), _econ(args), args.vary, values, lock_other=args.lock_trends
        )
    write_table(columns, rows, args.format, out)


def _prediction_rows(agent, discrete, role=None, treatment=None):
    rows = []
    for (r, t), p in experiment.prediction_vector(agent, discrete).items():
        if role and r.value != role or treatment and t.value != treatment:
            continue
        rows.append((r.value, t.value, p.s_star, p.giving, p.region.value))
    return ("role", "treatment", "s_star", "giving", "region"), rows


def cmd_predict(args, out):
    columns, rows = _prediction_rows(_agent(args), args.discrete, args.role, args.treatment)
    write_table(columns, rows, args.format, out)


def cmd_hypotheses(args, out):
    agent = _agent(args)
    if args.format == "text":
        columns, rows = _prediction_rows(agent, args.discrete)
        write_table(columns, rows, "text", out)
        out.write("\n")
    rows = []
    for h in experiment.evaluate_hypotheses(agent, args.discrete).values():
        lower = " ".join(f"{t.value}={g!r}" for t, g in h.lower.items())
        higher = " ".join(f"{t.value}={g!r}" for t, g in h.higher.items())
        rows.append((h.name, h.role.value, h.verdict.value, lower, higher, h.note))
    write_table(("hypothesis", "role", "verdict", "lower", "higher", "note"), rows, args.format, out)


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"


def _parse_dist(text, flag, log):
    """``x`` or ``x,y,...`` is a point mass; ``lo:hi`` a (log-)uniform range."""
    if re.fullmatch(rf"{_NUM}:{_NUM}", text):
        lo, hi = (float(v) for v in text.split(":"))
        try:
            return simlab.LogUniform(lo, hi) if log else simlab.Uniform(lo, hi)
        except ValueError as e:
            raise UsageError(f"{flag}: {e}") from None
    if re.fullmatch(rf"{_NUM}(?:,{_NUM})*", text):
        return simlab.PointMass(tuple(float(v) for v in text.split(",")))
    raise UsageError(f"{flag}: expected a value, a comma list or lo:hi, got {text!r}")


def _seed(args):
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return args.seed
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def cmd_simulate(args, out):
    try:
        config = simlab.PopulationConfig(
            n_subjects=args.subjects,
            share_selfish=args.share_selfish,
            social_ab=_parse_dist(args.ab, "--ab", log=True),
            eta=_parse_dist(args.eta, "--eta", log=False),
            decision_noise_sd=args.noise_sd,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None
    records = simlab.simulate(config, _seed(args), session_id=args.session_id)
    simlab.export_csv(records, args.out)
    out.write(f"wrote {len(records)} records to {args.out}\n")


TABLES = ("summary", "wilcoxon", "cdf", "censoring")


def cmd_analyze(args, out):
    tables = [t.strip() for t in args.tables.split(",") if t.strip()]
    unknown = [t for t in tables if t not in TABLES]
    if unknown:
        raise UsageError(f"--tables: unknown table(s) {', '.join(unknown)}")
    records = analysis.load_csv(args.input)
    if args.implemented_only:
        records = analysis.implemented_only(records)
    if args.cutoff is not None:
        try:
            records = analysis.filter_social(records, analysis.SocialFilter(args.cutoff))
        except ValueError as e:
            raise UsageError(f"--cutoff: {e}") from None
    if not records:
        raise UsageError("no records left after filtering")

    for k, name in enumerate(tables):
        if k:
            out.write("\n")
        out.write(f"# {name}\n")
        if name == "summary":
            cells, overall = analysis.summary_by_treatment(records)
            rows = [(c.treatment.value, c.role.value, c.mean, c.sd, c.n) for c in cells]
            rows.append(("all", "all", overall.mean, overall.sd, overall.n))
            write_table(("treatment", "role", "mean", "sd", "n"), rows, args.format, out)
        elif name == "censoring":
            rate = analysis.censoring_rate(records)
            write_table(("censoring_rate", "n"), [(rate, len(records))], args.format, out)
        elif name == "wilcoxon":
            rows = [
                (c.group, c.decrease, c.comparison, c.n, c.result.n_effective,
                 c.result.w_plus, c.result.p_value, c.result.method)
                for c in analysis.wilcoxon_table(records)
            ]
            columns = ("group", "decrease", "comparison", "n", "n_effective", "w_plus",
                       "p_two_sided", "method")
            write_table(columns, rows, args.format, out)
        elif name == "cdf":
            _write_cdfs(records, args, out)


def _write_cdfs(records, args, out):
    present = {(r.treatment, r.role) for r in records}
    cells = [(t, r) for t in experiment.Treatment for r in experiment.Role if (t, r) in present]
    if args.cdf_dir:
        d = Path(args.cdf_dir)
        d.mkdir(parents=True, exist_ok=True)
        for t, r in cells:
            path = d / f"cdf_{t.value}_{r.value}.csv"
            with open(path, "w", encoding="utf-8", newline="") as fh:
                write_table(("giving", "cumulative_fraction"),
                            analysis.cdf_points(records, t, r), "csv", fh)
        out.write(f"wrote {len(cells)} CDF files to {d}\n")
        return
    rows = [
        (t.value, r.value, g, f)
        for t, r in cells
        for g, f in analysis.cdf_points(records, t, r)
    ]
    write_table(("treatment", "role", "giving", "cumulative_fraction"), rows, args.format, out)


# --- parser ------------------------------------------------------------------

def _model_flags(p, economy=True, required=True):
    p.add_argument("--a", type=float, required=required, help="personal-concern weight (> 0)")
    p.add_argument("--b", type=float, required=required, help="social-concern weight (>= 0)")
    p.add_argument("--eta", type=float, default=0.0, help="own-trend loss weight in [0, 1)")
    if economy:
        p.add_argument("--wi", type=float, required=required, help="dictator's summed wages")
        p.add_argument("--wj", type=float, required=required, help="recipient's summed wages")
        p.add_argument("--tax", type=float, required=required, help="tax pot to split")
        p.add_argument("--di", type=float, default=0.0, help="dictator's wage trend")
        p.add_argument("--dj", type=float, default=0.0, help="recipient's wage trend")


def _output_flags(p):
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", help="write to this file instead of standard output")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trendfair",
        description="Trend-augmented inequity aversion: solver, lab simulator, analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal kept share for one agent and economy")
    _model_flags(p)
    p.add_argument("--grid-check", action="store_true", help="also run the brute-force grid oracle")
    _output_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="s* or utility curves over a parameter range")
    p.add_argument("--preset", choices=presets.PRESET_NAMES)
    p.add_argument("--vary", choices=("di", "dj"))
    p.add_argument("--from", dest="start", type=float)
    p.add_argument("--to", dest="stop", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--lock-trends", action="store_true",
                   help="with --vary di, move the recipient's trend along with the dictator's")
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--wi", type=float, default=12.0)
    p.add_argument("--wj", type=float, default=10.0)
    p.add_argument("--tax", type=float, default=11.0)
    p.add_argument("--di", type=float, default=0.0)
    p.add_argument("--dj", type=float, default=0.0)
    _output_flags(p)
    p.set_defaults(func=cmd_sweep)

    roles = [r.value for r in experiment.Role]
    treatments = [t.value for t in experiment.Treatment]
    for name, func, helptext in (
        ("predict", cmd_predict, "model-predicted giving in the lab treatments"),
        ("hypotheses", cmd_hypotheses, "evaluate H1-H4 on predicted giving"),
    ):
        p = sub.add_parser(name, help=helptext)
        _model_flags(p, economy=False)
        if name == "predict":
            p.add_argument("--role", choices=roles)
            p.add_argument("--treatment", choices=treatments)
        p.add_argument("--discrete", action="store_true", help="use the 10-cent choice grid")
        _output_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("simulate", help="simulate one lab session and write the CSV")
    p.add_argument("--subjects", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help=f"overridden by ${SEED_ENV}")
    p.add_argument("--share-selfish", type=float, default=0.0)
    p.add_argument("--ab", default="2", help="social a/b: value, comma list, or lo:hi (log-uniform)")
    p.add_argument("--eta", default="0.8", help="eta: value, comma list, or lo:hi (uniform)")
    p.add_argument("--noise-sd", type=float, default=0.0)
    p.add_argument("--session-id", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate, format="text")

    p = sub.add_parser("analyze", help="descriptive tables and signed-rank tests")
    p.add_argument("--input", required=True)
    p.add_argument("--cutoff", type=float, help="minimum Stable giving to keep a subject")
    p.add_argument("--tables", default=",".join(TABLES), help="comma list of " + ", ".join(TABLES))
    p.add_argument("--implemented-only", action="store_true")
    p.add_argument("--cdf-dir", help="write one two-column CDF file per cell here")
    _output_flags(p)
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    target = getattr(args, "out", None) if args.command != "simulate" else None
    try:
        buf = io.StringIO()
        args.func(args, buf)
        if target:
            with open(target, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
    except UsageError as e:
        print(f"trendfair {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except analysis.SchemaError as e:
        print(f"trendfair {args.command}: schema error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as e:
        print(f"trendfair {args.command}: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"trendfair {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
