"""
Minimum cost is not maximum efficiency
======================================

A family of operations with fixed output value PE=2.5 where stretching the
operation time first lowers and then raises the input cost RE.  Repeating
each operation back to back over 1150 hours, the one with the lowest R earns
the most, although a different one has the lowest cost.
"""

import sys

from resintensity import SimpleOperation, evaluate_set
from resintensity.io_cli import RunConfig, emit_report

rows = [
    (2, 1), (1.894, 1.05), (1.824, 1.1), (1.772, 1.15), (1.75, 1.2), (1.738, 1.25),
    (1.759, 1.3), (1.791, 1.35), (1.837, 1.4), (1.913, 1.45), (2, 1.5),
]
ops = [SimpleOperation(re, 2.5, 0, t, label=f"N{i}") for i, (re, t) in enumerate(rows, 1)]

report = evaluate_set(ops, horizon=1150)
emit_report(report, RunConfig(), sys.stdout)

###############################################################################
best, cheapest = report.rows[report.argmin_R], report.rows[report.argmin_cost]
print(f"\nlowest R:    {best.label}  profit {best.horizon_profit:.2f}")
print(f"lowest cost: {cheapest.label}  profit {cheapest.horizon_profit:.2f}")
print(f"difference:  {best.horizon_profit - cheapest.horizon_profit:.2f}")
print(f"Spearman(R, profit) = {report.mirror_rank_stat:.4f}")
