"""
Resource intensity of a single operation
========================================

An operation consumes 2 value units at t=2 and returns 3 value units at t=8.
We compute when the return finally compensates the consumption (the actual
completion time t_a) and how much bound resource the operation carried on
the way there (resource intensity R, in CTT).
"""

from resintensity import (
    normalize_simple, actual_completion_simple, bd_height,
    resource_intensity_simple, simple_to_signals, actual_completion_numeric,
    resource_intensity_numeric,
)

# The consumption side is often written with a negative sign; only its
# magnitude matters.
op = normalize_simple(-2, 3, t_r=2, t_p=8)
print(op)

###############################################################################
# Closed form
print("t_a =", actual_completion_simple(op))
print("BD  =", bd_height(op))
print("R   =", resource_intensity_simple(op), "CTT")

###############################################################################
# The same numbers by quadrature: each registration becomes a one-bin impulse
# and the threads are integrated with running sums.
for step in (1e-2, 1e-3, 1e-4):
    signals = simple_to_signals(op, step)
    print(f"step={step:g}  t_a={actual_completion_numeric(signals):.6f}"
          f"  R={resource_intensity_numeric(signals):.6f}")
