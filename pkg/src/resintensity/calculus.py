"""Rectangle-rule threads, actual completion and resource intensity for sampled signals.

All quadrature is a running sum times the step.  Registration impulses occupy
a single bin, and the running sum keeps channel totals exact, which a
trapezoid rule would not.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .op_model import (
    HorizonError,
    InvalidOperationError,
    NonEffectiveOperationError,
    SampledSignal,
    SignalOperation,
    ThreadProfile,
    _floor_tol,
)


@dataclass(frozen=True)
class Tolerances:
    rel_tol: float = 1e-6
    abs_tol: float = 1e-9
    # t_a is searched up to t_f + max_horizon_factor * (t_f - t0)
    max_horizon_factor: float = 100.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_horizon_factor > 0):
            raise InvalidOperationError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerances()


def _running_sum(values: np.ndarray, step: float) -> np.ndarray:
    return np.cumsum(values) * step


def _left_rect(values: np.ndarray, step: float) -> np.ndarray:
    # out[k] = step * sum(values[:k]); exact at grid points for step functions
    out = np.empty_like(values, dtype=float)
    if len(values):
        out[0] = 0.0
        np.cumsum(values[:-1], out=out[1:])
    return out * step


def cumulative_integral(s: SampledSignal) -> SampledSignal:
    """Inclusive left-rectangle running integral on the same grid.

    ``out[k] = step * sum(values[:k + 1])``; the last entry equals the signal
    total.
    """
    return SampledSignal(s.t0, s.step, _running_sum(s.values, s.step))


def second_integral(s: SampledSignal) -> SampledSignal:
    """Integral of the accumulated value.

    The first stage is :func:`cumulative_integral`; the second integrates
    that step function up to each sample instant, ``out[k] = step *
    sum(first[:k])``.  An impulse of magnitude ``M`` at sample ``t*``
    therefore gives exactly ``M * max(v - t*, 0)`` at every grid point.
    """
    return SampledSignal(s.t0, s.step, _left_rect(_running_sum(s.values, s.step), s.step))


def physical_completion(op: SignalOperation) -> float:
    """Last grid instant carrying a nonzero sample on either channel."""
    idx = [i for i in (op.re_signal.last_nonzero_index, op.pe_signal.last_nonzero_index)
           if i is not None]
    if not idx:
        raise InvalidOperationError("both channels are identically zero")
    return op.t0 + max(idx) * op.step


def _last_active_index(op: SignalOperation) -> int:
    return _floor_tol((physical_completion(op) - op.t0) / op.step)


def _horizon_limit(op: SignalOperation, t_f: float, tol: Tolerances) -> float:
    span = max(t_f - op.t0, op.step)
    return t_f + tol.max_horizon_factor * span


def actual_completion_numeric(op: SignalOperation, tol: Tolerances = DEFAULT_TOL) -> float:
    """Earliest ``v >= t_f`` at which the return thread compensates consumption.

    Compensation means ``vpe(v) >= vre(v)``.  From ``t_f`` on, ``ire`` and
    ``ipe`` hold their totals, so the mismatch is exactly linear across the
    zero-extended grid and the linear interpolant's root is the crossing.
    """
    re_total, pe_total = op.re_signal.total, op.pe_signal.total
    if re_total <= 0 or pe_total <= 0:
        raise InvalidOperationError("both channels need a positive total value")

    k_f = _last_active_index(op)
    t_f = op.t0 + k_f * op.step
    vre = _left_rect(_running_sum(op.re_signal.values[:k_f + 1], op.step), op.step)
    vpe = _left_rect(_running_sum(op.pe_signal.values[:k_f + 1], op.step), op.step)
    dif_f = float(vre[-1] - vpe[-1])
    scale = tol.abs_tol + tol.rel_tol * max(vre[-1], vpe[-1])

    equal_totals = abs(pe_total - re_total) <= tol.rel_tol * max(pe_total, re_total)
    if pe_total < re_total and not equal_totals:
        raise NonEffectiveOperationError(
            f"no compensation: operation not effective (return {pe_total:g} <= consumption {re_total:g})")
    if dif_f <= (scale if equal_totals else 0.0):
        return t_f
    if equal_totals:
        raise NonEffectiveOperationError(
            "no compensation: operation not effective (equal totals, consumption still bound)")

    t_a = t_f + dif_f / (pe_total - re_total)
    limit = _horizon_limit(op, t_f, tol)
    if t_a > limit:
        raise HorizonError(f"actual completion {t_a:g} beyond search horizon {limit:g}")
    return t_a


def mismatch_thread(op: SignalOperation, t_a: float, tol: Tolerances = DEFAULT_TOL,
                    signed: bool = True) -> ThreadProfile:
    """All six threads on ``[t0, t_a]``, channels zero-extended as needed.

    ``ire``/``ipe`` come from :func:`cumulative_integral`, ``vre``/``vpe``
    as in :func:`second_integral`, and ``r[k] = step * sum(dif[:k])``.  When ``t_a`` falls
    between samples a final point at ``t_a`` is appended, with the threads
    linearly interpolated and ``r`` closed by the exact area of the
    interpolated sliver.  ``signed=False`` integrates ``|dif|`` instead.
    """
    step = op.step
    t_f = physical_completion(op)
    limit = _horizon_limit(op, t_f, tol)
    if t_a > limit:
        raise HorizonError(f"t_a={t_a:g} beyond extendable span {limit:g}")
    if t_a < op.t0:
        raise InvalidOperationError(f"t_a={t_a:g} precedes the grid start {op.t0:g}")

    q = (t_a - op.t0) / step
    K = _floor_tol(q)
    frac = q - K
    on_grid = abs(frac) <= 1e-9 * max(1.0, q)
    n = K + 1 if on_grid else K + 2
    re = np.zeros(n)
    pe = np.zeros(n)
    m = min(n, len(op))
    re[:m] = op.re_signal.values[:m]
    pe[:m] = op.pe_signal.values[:m]

    ire = _running_sum(re, step)
    ipe = _running_sum(pe, step)
    vre = _left_rect(ire, step)
    vpe = _left_rect(ipe, step)
    dif = vre - vpe
    integrand = dif if signed else np.abs(dif)
    r = _left_rect(integrand, step)
    grid = op.t0 + step * np.arange(n)

    if on_grid:
        grid[-1] = t_a
        return ThreadProfile(grid, ire, ipe, vre, vpe, dif, r)

    def interp(a):
        return a[K] + frac * (a[K + 1] - a[K])

    d_end = interp(dif)
    d_end = d_end if signed else abs(d_end)
    r_end = r[K] + 0.5 * (integrand[K] + d_end) * frac * step
    cut = slice(0, K + 1)
    return ThreadProfile(
        np.append(grid[cut], t_a),
        np.append(ire[cut], interp(ire)),
        np.append(ipe[cut], interp(ipe)),
        np.append(vre[cut], interp(vre)),
        np.append(vpe[cut], interp(vpe)),
        np.append(dif[cut], interp(dif)),
        np.append(r[cut], r_end),
    )


def resource_intensity_numeric(op: SignalOperation, tol: Tolerances = DEFAULT_TOL,
                               signed: bool = True) -> float:
    """Integral of the mismatch thread from the grid start to the actual completion (CTT)."""
    t_a = actual_completion_numeric(op, tol)
    return mismatch_thread(op, t_a, tol, signed=signed).resource_intensity
