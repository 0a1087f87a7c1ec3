"""Operation-set analytics: sweeps, per-row metrics, extrema and the R/profit rank relation."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, ROUND_HALF_UP, Decimal
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from .analytic import simple_metrics
from .calculus import DEFAULT_TOL, Tolerances, mismatch_thread, actual_completion_numeric
from .op_model import (
    InvalidOperationError,
    OperationError,
    OperationMetrics,
    SimpleOperation,
    SweepSpec,
    ThreadProfile,
    simple_to_signals,
)

DEFAULT_HORIZON = 1150.0


class SweepDomainError(OperationError):
    """A generated operation falls outside PE > |RE| (or is otherwise invalid)."""


class EmptyInputError(OperationError):
    pass


def round_half_up(x: float, places: int) -> Decimal:
    """Round to ``places`` decimals, halves away from zero.

    Binary noise is cleared first so that a computed 37.12499999999999
    prints like the exact 37.125 it stands for (-> 37.13).
    """
    d = Decimal(repr(float(x))).quantize(Decimal(1).scaleb(-(places + 6)), ROUND_HALF_EVEN)
    return d.quantize(Decimal(1).scaleb(-places), ROUND_HALF_UP)


def generate_sweep(spec: SweepSpec) -> list[SimpleOperation]:
    base = spec.base
    out = []
    for i in range(int(spec.count)):
        x = spec.start + i * spec.step
        label = str(i + 1)
        try:
            if spec.varied_field == "op_time":
                op = SimpleOperation(base.re_value, base.pe_value, 0.0, x, label=label)
            elif spec.varied_field == "re_value":
                op = SimpleOperation(x, base.pe_value, base.t_r, base.t_p, label=label)
            else:
                op = SimpleOperation(base.re_value, x, base.t_r, base.t_p, label=label)
        except InvalidOperationError as exc:
            raise SweepDomainError(f"sweep item {i}: {exc}") from exc
        if not op.is_effective:
            raise SweepDomainError(
                f"sweep item {i}: PE={op.pe_value:g} must exceed |RE|={op.re_value:g}")
        out.append(op)
    return out


@dataclass(frozen=True)
class SetReport:
    """Per-operation metrics plus extremum indices (0-based, ties to lowest index).

    ``ties`` maps an extremum name to every row index sharing the extreme
    value, and is only populated when there is more than one.
    """

    rows: Tuple[OperationMetrics, ...]
    argmin_cost: Optional[int]
    argmin_R: Optional[int]
    argmax_profit: Optional[int] = None
    mirror_rank_stat: Optional[float] = None
    ties: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def ids(self) -> list[str]:
        return [m.label if m.label is not None else str(i + 1) for i, m in enumerate(self.rows)]

    def id_of(self, index: Optional[int]) -> Optional[str]:
        return None if index is None else self.ids[index]


def _extremum(values: Sequence[float], largest: bool) -> Tuple[int, Tuple[int, ...]]:
    arr = np.asarray(values, dtype=float)
    best = arr.max() if largest else arr.min()
    hits = tuple(int(i) for i in np.flatnonzero(arr == best))
    return hits[0], hits


def evaluate_set(ops: Sequence[SimpleOperation], horizon: Optional[float] = None) -> SetReport:
    """Closed-form metrics for every operation and the set's extrema.

    Without a horizon no profit column is produced and ``argmax_profit`` and
    ``mirror_rank_stat`` stay ``None``.  The rank statistic is Spearman's
    rho between R and horizon profit; a strongly negative value is the
    "R mirrors profit" pattern.
    """
    ops = list(ops)
    if not ops:
        raise EmptyInputError("operation set is empty")
    rows = []
    for i, op in enumerate(ops):
        m = simple_metrics(op, horizon)
        if m.label is None:
            m = dataclasses.replace(m, label=str(i + 1))
        rows.append(m)

    ties = {}
    argmin_cost, hits = _extremum([m.re_total for m in rows], largest=False)
    if len(hits) > 1:
        ties["argmin_cost"] = hits
    argmin_R, hits = _extremum([m.resource_intensity for m in rows], largest=False)
    if len(hits) > 1:
        ties["argmin_R"] = hits

    argmax_profit = rho = None
    if horizon is not None:
        profits = [m.horizon_profit for m in rows]
        argmax_profit, hits = _extremum(profits, largest=True)
        if len(hits) > 1:
            ties["argmax_profit"] = hits
        rho = mirror_rank_stat([m.resource_intensity for m in rows], profits)

    return SetReport(tuple(rows), argmin_cost, argmin_R, argmax_profit, rho, ties)


def mirror_rank_stat(r_values: Sequence[float], profits: Sequence[float]) -> Optional[float]:
    """Spearman rank correlation, or ``None`` when undefined (n < 2 or a constant column)."""
    if len(r_values) < 2:
        return None
    if np.ptp(r_values) == 0 or np.ptp(profits) == 0:
        return None
    rho = stats.spearmanr(r_values, profits).statistic
    return None if math.isnan(rho) else float(rho)


def thread_series(op: SimpleOperation, step: float,
                  tol: Tolerances = DEFAULT_TOL) -> ThreadProfile:
    """Sampled threads of a simple operation, ready for plotting."""
    signals = simple_to_signals(op, step)
    return mismatch_thread(signals, actual_completion_numeric(signals, tol), tol)
