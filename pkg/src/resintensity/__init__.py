"""Resource intensity (complex costs) of target operations.

Modules:

- ``op_model``: operation, signal and metric types.
- ``calculus``: rectangle-rule threads and numeric t_a / R for sampled signals.
- ``analytic``: closed forms for simple operations.
- ``analysis``: sweeps, set reports, extrema.
- ``io_cli``: CSV I/O and the ``resintensity`` command line.
"""
from .op_model import (
    HorizonError,
    InvalidOperationError,
    NonEffectiveOperationError,
    OperationError,
    OperationMetrics,
    SampledSignal,
    SignalOperation,
    SimpleOperation,
    SweepSpec,
    ThreadProfile,
    normalize_simple,
    simple_to_signals,
)
from .calculus import (
    Tolerances,
    actual_completion_numeric,
    cumulative_integral,
    mismatch_thread,
    physical_completion,
    resource_intensity_numeric,
    second_integral,
)
from .analytic import (
    actual_completion_simple,
    bd_height,
    cycle_profit,
    resource_intensity_simple,
    simple_metrics,
)
from .analysis import (
    DEFAULT_HORIZON,
    SetReport,
    SweepDomainError,
    evaluate_set,
    generate_sweep,
    mirror_rank_stat,
    round_half_up,
    thread_series,
)

__version__ = "0.1.0"
