"""Domain types shared by the numeric, closed-form and reporting layers.

Value magnitudes are stored nonnegative.  Input product cost estimates may be
supplied signed (the consumption side is often written negative) and are
normalized with :func:`normalize_simple`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class OperationError(ValueError):
    """Base class for every domain error raised by this package."""


class InvalidOperationError(OperationError):
    """Operation or signal violates a structural invariant."""


class NonEffectiveOperationError(OperationError):
    """Return never compensates consumption (PE <= |RE|)."""


class HorizonError(OperationError):
    """Actual completion lies beyond the searchable time span."""


def _floor_tol(q: float) -> int:
    """floor() that treats values within rounding noise of an integer as that integer."""
    n = round(q)
    if abs(q - n) <= 1e-9 * max(1.0, abs(q)):
        return int(n)
    return math.floor(q)


def _ceil_tol(q: float) -> int:
    n = round(q)
    if abs(q - n) <= 1e-9 * max(1.0, abs(q)):
        return int(n)
    return math.ceil(q)


@dataclass(frozen=True)
class SimpleOperation:
    """Lumped operation: one input registration and one output registration.

    ``re_value`` is the magnitude of the input-product cost estimate,
    ``pe_value`` the output-product estimate, ``t_r``/``t_p`` the
    registration instants.  ``label`` is carried through reports only.
    """

    re_value: float
    pe_value: float
    t_r: float
    t_p: float
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("re_value", "pe_value", "t_r", "t_p"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidOperationError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.re_value <= 0 or self.pe_value <= 0:
            raise InvalidOperationError(
                f"value magnitudes must be positive (re={self.re_value}, pe={self.pe_value})")
        if self.t_p < self.t_r:
            raise InvalidOperationError(
                f"output registered before input (t_r={self.t_r}, t_p={self.t_p})")

    @property
    def op_time(self) -> float:
        return self.t_p - self.t_r

    @property
    def is_effective(self) -> bool:
        return self.pe_value > self.re_value


@dataclass(frozen=True)
class SampledSignal:
    """Uniformly sampled value rate for one channel.

    Sample ``k`` is the rate over the bin ``[t0 + k*step, t0 + (k+1)*step)``,
    so ``step * sum(values)`` is the channel's total value.
    """

    t0: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise InvalidOperationError("signal values must be one-dimensional")
        if not (math.isfinite(self.step) and self.step > 0):
            raise InvalidOperationError(f"step must be positive, got {self.step!r}")
        if not math.isfinite(self.t0):
            raise InvalidOperationError("t0 must be finite")
        if not np.all(np.isfinite(vals)):
            raise InvalidOperationError("signal samples must be finite")
        if np.any(vals < 0):
            raise InvalidOperationError("signal samples must be nonnegative")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "step", float(self.step))

    def __len__(self):
        return len(self.values)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.step * np.arange(len(self.values))

    @property
    def total(self) -> float:
        return float(self.step * self.values.sum())

    @property
    def last_nonzero_index(self) -> Optional[int]:
        nz = np.flatnonzero(self.values)
        return int(nz[-1]) if nz.size else None

    def padded(self, t0: float, n: int) -> "SampledSignal":
        """Zero-extend onto the grid ``t0 + k*step, k < n`` (must contain this grid)."""
        offset = _floor_tol((self.t0 - t0) / self.step)
        if offset < 0 or offset + len(self.values) > n:
            raise InvalidOperationError("target grid does not cover the signal")
        out = np.zeros(n)
        out[offset:offset + len(self.values)] = self.values
        return SampledSignal(t0, self.step, out)


@dataclass(frozen=True)
class SignalOperation:
    """Consumption and return channels on one shared grid.

    Channels given on the same step but different offsets/lengths are
    zero-padded to a common grid on construction.
    """

    re_signal: SampledSignal
    pe_signal: SampledSignal

    def __post_init__(self):
        re, pe = self.re_signal, self.pe_signal
        if not math.isclose(re.step, pe.step, rel_tol=1e-12):
            raise InvalidOperationError(
                f"channels must share a step (got {re.step} and {pe.step}); resample first")
        step = re.step
        shift = (pe.t0 - re.t0) / step
        if abs(shift - round(shift)) > 1e-9 * max(1.0, abs(shift)):
            raise InvalidOperationError("channel grids are not aligned")
        t0 = min(re.t0, pe.t0)
        end = max(re.t0 + len(re) * step, pe.t0 + len(pe) * step)
        n = _ceil_tol((end - t0) / step)
        if re.t0 != t0 or len(re) != n:
            object.__setattr__(self, "re_signal", re.padded(t0, n))
        if pe.t0 != t0 or len(pe) != n:
            object.__setattr__(self, "pe_signal", pe.padded(t0, n))

    @property
    def t0(self) -> float:
        return self.re_signal.t0

    @property
    def step(self) -> float:
        return self.re_signal.step

    def __len__(self):
        return len(self.re_signal)


@dataclass(frozen=True)
class ThreadProfile:
    """Sampled threads over ``[t0, t_a]``.

    ``ire``/``ipe`` are accumulated input/output value, ``vre``/``vpe`` their
    integrals, ``dif = vre - vpe`` the mismatch and ``r`` its running
    integral.  The last grid point is ``t_a`` itself.
    """

    grid: np.ndarray
    ire: np.ndarray
    ipe: np.ndarray
    vre: np.ndarray
    vpe: np.ndarray
    dif: np.ndarray
    r: np.ndarray

    COLUMNS = ("v", "ire", "ipe", "vre", "vpe", "dif", "r")

    @property
    def t_a(self) -> float:
        return float(self.grid[-1])

    @property
    def resource_intensity(self) -> float:
        return float(self.r[-1])

    def as_array(self) -> np.ndarray:
        """Columns in ``COLUMNS`` order, one row per grid point."""
        return np.column_stack(
            [self.grid, self.ire, self.ipe, self.vre, self.vpe, self.dif, self.r])


@dataclass(frozen=True)
class OperationMetrics:
    re_total: float
    pe_total: float
    t_r: float
    t_p: float
    t_f: float
    t_a: float
    op_time: float
    resource_intensity: float
    profit_rate: float
    horizon_profit: Optional[float] = None
    label: Optional[str] = None


SWEEP_FIELDS = ("re_value", "pe_value", "op_time")


@dataclass(frozen=True)
class SweepSpec:
    """Vary one field of ``base`` as ``start + i*step`` for ``i < count``."""

    base: SimpleOperation
    varied_field: str
    start: float
    step: float
    count: int
    horizon: Optional[float] = None

    def __post_init__(self):
        if self.varied_field not in SWEEP_FIELDS:
            raise InvalidOperationError(
                f"varied_field must be one of {SWEEP_FIELDS}, got {self.varied_field!r}")
        if int(self.count) != self.count or self.count < 1:
            raise InvalidOperationError(f"count must be a positive integer, got {self.count!r}")
        if self.horizon is not None and not self.horizon > 0:
            raise InvalidOperationError("horizon must be positive")


def normalize_simple(raw_re: float, pe: float, t_r: float, t_p: float,
                     label: Optional[str] = None) -> SimpleOperation:
    """Build a :class:`SimpleOperation`, storing ``|raw_re|``."""
    return SimpleOperation(abs(float(raw_re)), float(pe), t_r, t_p, label=label)


def simple_to_signals(op: SimpleOperation, step: float) -> SignalOperation:
    """Render a simple operation as two single-bin impulses.

    The grid is anchored so that ``t_r`` falls exactly on a sample and at
    least one zero sample precedes it; the output impulse sits in the bin
    containing ``t_p``.  Each impulse has height ``magnitude / step``.
    """
    if not step > 0:
        raise InvalidOperationError(f"step must be positive, got {step!r}")
    T = op.op_time
    if T > 0 and step > T / 10 * (1 + 1e-12):
        raise InvalidOperationError(
            f"step {step} too coarse for operation time {T} (need step <= T/10)")
    lead = max(1, _ceil_tol(op.t_r / step)) if op.t_r > 0 else 1
    t0 = op.t_r - lead * step
    k_r = lead
    k_p = k_r + _floor_tol(T / step)
    n = k_p + 2
    re = np.zeros(n)
    pe = np.zeros(n)
    re[k_r] = op.re_value / step
    pe[k_p] = op.pe_value / step
    return SignalOperation(SampledSignal(t0, step, re), SampledSignal(t0, step, pe))
