"""
How R responds to operation time, cost and output value
=======================================================

Three one-parameter families around RE=2, PE=3:

* longer operations bind resources longer, so R grows (quadratically);
* costlier input at fixed output raises R;
* more valuable output speeds up compensation and lowers R.
"""

import sys

from resintensity import SimpleOperation, SweepSpec, evaluate_set, generate_sweep
from resintensity.io_cli import RunConfig, emit_report

families = {
    "operation time 1..7": SweepSpec(SimpleOperation(2, 3, 0, 1), "op_time", 1, 1, 7),
    "RE 2.0..2.6, T=3": SweepSpec(SimpleOperation(2, 3, 0, 3), "re_value", 2.0, 0.1, 7),
    "PE 2.5..3.1, T=3": SweepSpec(SimpleOperation(2, 3, 0, 3), "pe_value", 2.5, 0.1, 7),
}

for title, spec in families.items():
    print(f"\n--- {title}")
    emit_report(evaluate_set(generate_sweep(spec)), RunConfig(), sys.stdout)

###############################################################################
# Pushing RE towards PE makes compensation arbitrarily slow and R blows up.
for re in (2.9, 2.99, 2.999):
    r = evaluate_set([SimpleOperation(re, 3, 0, 3)]).rows[0].resource_intensity
    print(f"RE={re}: R={r:.1f}")
