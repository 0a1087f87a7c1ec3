"""Closed forms for simple operations (single input and output registration)."""
from __future__ import annotations

from typing import Optional

from .op_model import (
    InvalidOperationError,
    NonEffectiveOperationError,
    OperationMetrics,
    SimpleOperation,
)


def _require_effective(op: SimpleOperation, what: str) -> None:
    if not op.pe_value > op.re_value:
        raise NonEffectiveOperationError(
            f"{what} undefined: operation does not compensate consumption "
            f"(PE={op.pe_value:g} <= |RE|={op.re_value:g})")


def actual_completion_simple(op: SimpleOperation) -> float:
    """t_a = (PE*t_p - |RE|*t_r) / (PE - |RE|)."""
    _require_effective(op, "MFZO")
    if op.t_p == op.t_r:
        return op.t_p
    return (op.pe_value * op.t_p - op.re_value * op.t_r) / (op.pe_value - op.re_value)


def bd_height(op: SimpleOperation) -> float:
    """Height of the loss triangle: |RE|*PE*(t_p - t_r) / (PE - |RE|)."""
    _require_effective(op, "height BD")
    return op.re_value * op.pe_value * op.op_time / (op.pe_value - op.re_value)


def resource_intensity_simple(op: SimpleOperation) -> float:
    """R = PE*|RE|*(t_p - t_r)**2 / (2*(PE - |RE|)), in CTT."""
    _require_effective(op, "resource intensity")
    re, pe, T = op.re_value, op.pe_value, op.op_time
    return pe * re * T * T / (2.0 * (pe - re))


def cycle_profit(op: SimpleOperation, horizon: float) -> float:
    """Value added over ``horizon`` by back-to-back repetition.

    Fractional cycle counts are kept: ``horizon / T * (PE - |RE|)``.
    """
    if not op.op_time > 0:
        raise InvalidOperationError("cycle profit undefined for zero operation time")
    if not horizon > 0:
        raise InvalidOperationError(f"horizon must be positive, got {horizon!r}")
    return horizon / op.op_time * (op.pe_value - op.re_value)


def simple_metrics(op: SimpleOperation, horizon: Optional[float] = None) -> OperationMetrics:
    T = op.op_time
    return OperationMetrics(
        re_total=op.re_value,
        pe_total=op.pe_value,
        t_r=op.t_r,
        t_p=op.t_p,
        t_f=op.t_p,
        t_a=actual_completion_simple(op),
        op_time=T,
        resource_intensity=resource_intensity_simple(op),
        profit_rate=(op.pe_value - op.re_value) / T if T > 0 else float("inf"),
        horizon_profit=None if horizon is None else cycle_profit(op, horizon),
        label=op.label,
    )
