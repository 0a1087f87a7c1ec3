"""
Operations with spread-out registrations
========================================

Input arrives at rate 1 over [0, 2) and output at rate 1.5 over [6, 8).  There
is no closed form for this shape; the numeric path still gives t_a and R.
For these piecewise-constant rates the exact values are t_a = 19 and
R = 647/6.
"""

import numpy as np

from resintensity import (
    SampledSignal, SignalOperation, actual_completion_numeric,
    physical_completion, resource_intensity_numeric,
)

for h in (1e-2, 1e-3, 1e-4):
    t = np.arange(int(round(10 / h))) * h
    re = np.where(t < 2 - h / 2, 1.0, 0.0)
    pe = np.where((t >= 6 - h / 2) & (t < 8 - h / 2), 1.5, 0.0)
    op = SignalOperation(SampledSignal(0, h, re), SampledSignal(0, h, pe))
    print(f"h={h:g}  t_f={physical_completion(op):.4f}  "
          f"t_a={actual_completion_numeric(op):.6f}  R={resource_intensity_numeric(op):.6f}")
print("exact            t_a=19.000000  R=%.6f" % (647 / 6))

###############################################################################
# When the mismatch changes sign (return briefly runs ahead of consumption),
# the signed and absolute-value integrals differ.
h = 0.01
re = np.zeros(400); pe = np.zeros(400)
pe[10], re[50], pe[300] = 1 / h, 3 / h, 4 / h
op = SignalOperation(SampledSignal(0, h, re), SampledSignal(0, h, pe))
print("signed R:", resource_intensity_numeric(op))
print("|dif| R: ", resource_intensity_numeric(op, signed=False))
