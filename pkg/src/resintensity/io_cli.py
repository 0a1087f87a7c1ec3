"""CSV ingestion, report emission and the ``resintensity`` command line.

Exit codes: 0 success, 2 parse/domain error, 3 non-effective operation,
4 horizon exhausted.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, TextIO

import numpy as np

from .analysis import DEFAULT_HORIZON, SetReport, evaluate_set, generate_sweep, round_half_up
from .analytic import actual_completion_simple, bd_height, resource_intensity_simple
from .calculus import (
    Tolerances,
    actual_completion_numeric,
    mismatch_thread,
    physical_completion,
)
from .op_model import (
    HorizonError,
    NonEffectiveOperationError,
    OperationError,
    SampledSignal,
    SignalOperation,
    SimpleOperation,
    SweepSpec,
    ThreadProfile,
    normalize_simple,
    simple_to_signals,
)

OPS_HEADER = ["id", "re", "pe", "tr", "tp"]
SIGNAL_HEADER = ["t", "value"]

EXIT_OK, EXIT_DOMAIN, EXIT_NON_EFFECTIVE, EXIT_HORIZON = 0, 2, 3, 4


class ParseError(OperationError):
    pass


class GridError(ParseError):
    """Sample instants are not uniformly spaced."""


@dataclass(frozen=True)
class RunConfig:
    step: float = 1e-3
    horizon: float = DEFAULT_HORIZON
    output_format: str = "csv"
    rounding: int = 2
    signed_dif: bool = True

    def __post_init__(self):
        if not self.step > 0:
            raise ParseError("step must be positive")
        if not self.horizon > 0:
            raise ParseError("horizon must be positive")
        if self.rounding < 0:
            raise ParseError("rounding must be >= 0")
        if self.output_format not in ("csv", "json"):
            raise ParseError(f"unknown output format {self.output_format!r}")


def _number(cell: str, row: int, column: str) -> float:
    # decimal commas ("728,00") arrive quoted; treat them as points
    text = cell.strip().replace(",", ".")
    try:
        x = float(text)
    except ValueError:
        raise ParseError(f"row {row}: column {column!r} is not numeric: {cell!r}") from None
    if not math.isfinite(x):
        raise ParseError(f"row {row}: column {column!r} is not finite: {cell!r}")
    return x


def _read_rows(path, header: list[str]) -> list[tuple[int, list[str]]]:
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            got = [c.strip() for c in next(reader)]
        except StopIteration:
            raise ParseError(f"{path}: empty file, expected header {','.join(header)}") from None
        if got != header:
            raise ParseError(f"{path}: header must be {','.join(header)}, got {','.join(got)}")
        rows = []
        for lineno, cells in enumerate(reader, start=2):
            if not cells or all(not c.strip() for c in cells):
                continue
            if len(cells) != len(header):
                raise ParseError(f"row {lineno}: expected {len(header)} columns, got {len(cells)}")
            rows.append((lineno, cells))
    return rows


def load_simple_ops(path) -> list[SimpleOperation]:
    """Read ``id,re,pe,tr,tp`` rows; ``re`` may be signed.  The id becomes the op label."""
    ops = []
    for lineno, cells in _read_rows(path, OPS_HEADER):
        re, pe, tr, tp = (_number(c, lineno, name) for c, name in zip(cells[1:], OPS_HEADER[1:]))
        try:
            ops.append(normalize_simple(re, pe, tr, tp, label=cells[0].strip()))
        except OperationError as exc:
            raise ParseError(f"row {lineno}: {exc}") from exc
    if not ops:
        warnings.warn(f"{path}: no operations in file", stacklevel=2)
    return ops


def _read_signal(path, fallback_step: Optional[float]) -> tuple[float, Optional[float], np.ndarray]:
    rows = _read_rows(path, SIGNAL_HEADER)
    if not rows:
        raise ParseError(f"{path}: no samples")
    t = np.array([_number(c[0], n, "t") for n, c in rows])
    v = np.array([_number(c[1], n, "value") for n, c in rows])
    if np.any(v < 0):
        bad = rows[int(np.flatnonzero(v < 0)[0])][0]
        raise ParseError(f"{path}: row {bad}: negative value rate")
    if len(t) == 1:
        step = fallback_step
    else:
        d = np.diff(t)
        step = float(d.mean())
        if step <= 0 or np.any(d <= 0):
            raise GridError(f"{path}: sample times must be strictly increasing")
        if np.max(np.abs(d - step)) > 1e-9 * step:
            raise GridError(f"{path}: sample spacing is not uniform")
    return float(t[0]), step, v


def _resample(t0_src: float, step_src: float, values: np.ndarray,
              t0: float, step: float, n: int) -> np.ndarray:
    # move bin masses through the cumulative-mass curve; totals are preserved
    edges_src = t0_src + step_src * np.arange(len(values) + 1)
    mass_src = np.concatenate(([0.0], np.cumsum(values) * step_src))
    edges = t0 + step * np.arange(n + 1)
    return np.diff(np.interp(edges, edges_src, mass_src)) / step


def load_signal_op(path_re, path_pe, step: Optional[float] = None) -> SignalOperation:
    """Read two ``t,value`` files onto one grid.

    The common step is ``step`` if given, otherwise the finer of the two
    file steps.  A single-row file is an impulse and takes its bin width
    from ``step`` or from the other file.
    """
    t0_re, h_re, v_re = _read_signal(path_re, step)
    t0_pe, h_pe, v_pe = _read_signal(path_pe, step)
    h_re = h_re or h_pe
    h_pe = h_pe or h_re
    if h_re is None:
        raise GridError("cannot infer a step from single-sample files; pass step")
    target = step if step is not None else min(h_re, h_pe)
    t0 = min(t0_re, t0_pe)
    end = max(t0_re + len(v_re) * h_re, t0_pe + len(v_pe) * h_pe)
    q = (end - t0) / target
    n = int(round(q)) if abs(q - round(q)) <= 1e-9 * max(1.0, q) else math.ceil(q)
    try:
        return SignalOperation(
            SampledSignal(t0, target, _resample(t0_re, h_re, v_re, t0, target, n)),
            SampledSignal(t0, target, _resample(t0_pe, h_pe, v_pe, t0, target, n)),
        )
    except OperationError as exc:
        raise ParseError(str(exc)) from exc


def _fmt(x: float, places: int) -> str:
    d = round_half_up(x, places)
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _report_payload(report: SetReport, cfg: RunConfig) -> tuple[list[str], list[list[str]], list[tuple[str, str]]]:
    has_profit = any(m.horizon_profit is not None for m in report.rows)
    header = ["id", "re", "pe", "t", "r_intensity"] + (["prof"] if has_profit else [])
    p = cfg.rounding
    rows = []
    for ident, m in zip(report.ids, report.rows):
        row = [ident, _fmt(m.re_total, p), _fmt(m.pe_total, p), _fmt(m.op_time, p),
               _fmt(m.resource_intensity, p)]
        if has_profit:
            row.append(_fmt(m.horizon_profit, p))
        rows.append(row)
    summary = [
        ("argmin_cost", report.id_of(report.argmin_cost) or ""),
        ("argmin_r", report.id_of(report.argmin_R) or ""),
        ("argmax_prof", report.id_of(report.argmax_profit) or ""),
        ("mirror_rank_stat",
         "" if report.mirror_rank_stat is None else _fmt(report.mirror_rank_stat, 4)),
    ]
    for name, hits in report.ties.items():
        summary.append((f"ties_{name}", " ".join(report.ids[i] for i in hits)))
    return header, rows, summary


def emit_report(report: SetReport, cfg: RunConfig, sink: TextIO) -> None:
    """Write the table, then a blank line and ``key,value`` summary lines (or JSON)."""
    header, rows, summary = _report_payload(report, cfg)
    try:
        if cfg.output_format == "json":
            doc = {
                "columns": header,
                "rows": [dict(zip(header, r)) for r in rows],
                "summary": {k: v for k, v in summary},
            }
            json.dump(doc, sink, indent=2)
            sink.write("\n")
            return
        w = csv.writer(sink, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        sink.write("\n")
        w.writerow(["summary", "value"])
        w.writerows(summary)
    except OSError as exc:
        raise OSError(f"could not write report: {exc}") from exc


def empty_report() -> SetReport:
    return SetReport((), None, None)


def write_trace(profile: ThreadProfile, sink: TextIO) -> None:
    sink.write(",".join(ThreadProfile.COLUMNS) + "\n")
    np.savetxt(sink, profile.as_array(), delimiter=",", fmt="%.12g")


def analyze_simple(op: SimpleOperation, step: float, tol: Tolerances = Tolerances()) -> dict:
    """Closed-form metrics with the numeric cross-check at ``step``."""
    t_a = actual_completion_simple(op)
    R = resource_intensity_simple(op)
    signals = simple_to_signals(op, step)
    t_a_num = actual_completion_numeric(signals, tol)
    R_num = mismatch_thread(signals, t_a_num, tol).resource_intensity
    rel = abs(R_num - R) / R if R > 0 else abs(R_num - R)
    return {
        "re": op.re_value, "pe": op.pe_value, "t_r": op.t_r, "t_p": op.t_p,
        "op_time": op.op_time, "step": step,
        "t_f": op.t_p, "t_a_analytic": t_a, "t_a_numeric": t_a_num,
        "bd_height": bd_height(op),
        "R_analytic": R, "R_numeric": R_num, "R_rel_diff": rel,
    }


def analyze_signals(op: SignalOperation, tol: Tolerances = Tolerances(), signed: bool = True) -> dict:
    t_a = actual_completion_numeric(op, tol)
    profile = mismatch_thread(op, t_a, tol, signed=signed)
    return {
        "step": op.step, "re_total": op.re_signal.total, "pe_total": op.pe_signal.total,
        "t_f": physical_completion(op), "t_a_numeric": t_a,
        "R_numeric": profile.resource_intensity, "signed_dif": signed,
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resintensity",
        description="Actual completion time and resource intensity (CTT) of target operations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_simple(p):
        p.add_argument("--re", type=float, required=True, help="input value (sign ignored)")
        p.add_argument("--pe", type=float, required=True, help="output value")
        p.add_argument("--tr", type=float, required=True, help="input registration time")
        p.add_argument("--tp", type=float, required=True, help="output registration time")

    def add_report(p):
        p.add_argument("--horizon", type=float, default=DEFAULT_HORIZON)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--rounding", type=int, default=2)

    p = sub.add_parser("analyze", help="single simple operation, analytic and numeric")
    add_simple(p)
    p.add_argument("--step", type=float, default=1e-3)

    p = sub.add_parser("table", help="evaluate an id,re,pe,tr,tp operation file")
    p.add_argument("--input", required=True)
    add_report(p)

    p = sub.add_parser("sweep", help="generate and evaluate a one-parameter operation set")
    p.add_argument("--base", required=True, help="RE,PE")
    p.add_argument("--vary", choices=("time", "re", "pe"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--step", type=float, required=True, help="sweep increment")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--time", type=float, default=1.0,
                   help="operation time when varying re or pe")
    add_report(p)

    p = sub.add_parser("trace", help="write v,ire,ipe,vre,vpe,dif,r series")
    add_simple(p)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("signals", help="numeric metrics for two t,value signal files")
    p.add_argument("--re-file", required=True)
    p.add_argument("--pe-file", required=True)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--abs-dif", action="store_true", help="integrate |dif| instead of dif")
    return parser


def _dispatch(args, out: TextIO) -> None:
    if args.command == "analyze":
        op = normalize_simple(args.re, args.pe, args.tr, args.tp)
        json.dump(analyze_simple(op, args.step), out, indent=2)
        out.write("\n")
    elif args.command == "table":
        cfg = RunConfig(horizon=args.horizon, output_format=args.format, rounding=args.rounding)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            ops = load_simple_ops(args.input)
        report = evaluate_set(ops, cfg.horizon) if ops else empty_report()
        emit_report(report, cfg, out)
    elif args.command == "sweep":
        cfg = RunConfig(horizon=args.horizon, output_format=args.format, rounding=args.rounding)
        try:
            re, pe = (float(x) for x in args.base.split(","))
        except ValueError:
            raise ParseError(f"--base must be RE,PE, got {args.base!r}") from None
        field = {"time": "op_time", "re": "re_value", "pe": "pe_value"}[args.vary]
        base = normalize_simple(re, pe, 0.0, args.time)
        spec = SweepSpec(base, field, args.start, args.step, args.count, cfg.horizon)
        emit_report(evaluate_set(generate_sweep(spec), cfg.horizon), cfg, out)
    elif args.command == "trace":
        from .analysis import thread_series
        op = normalize_simple(args.re, args.pe, args.tr, args.tp)
        profile = thread_series(op, args.step)
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_trace(profile, fh)
    elif args.command == "signals":
        op = load_signal_op(args.re_file, args.pe_file, args.step)
        json.dump(analyze_signals(op, signed=not args.abs_dif), out, indent=2)
        out.write("\n")


def main(argv=None, out: Optional[TextIO] = None) -> int:
    args = _build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        _dispatch(args, out)
    except NonEffectiveOperationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_EFFECTIVE
    except HorizonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HORIZON
    except (OperationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
