"""
Plot-ready thread series
========================

Writes v, ire, ipe, vre, vpe, dif, r for the 2 -> 3 operation to a CSV and,
if matplotlib is installed, draws the mismatch and its integral.
"""

import sys
from pathlib import Path

from resintensity import SimpleOperation, thread_series
from resintensity.io_cli import write_trace

profile = thread_series(SimpleOperation(2, 3, 2, 8), step=1e-2)
out = Path(sys.argv[1] if len(sys.argv) > 1 else "threads.csv")
with out.open("w") as fh:
    write_trace(profile, fh)
print(f"wrote {len(profile.grid)} rows to {out}; R = {profile.resource_intensity:.4f}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True)
ax1.plot(profile.grid, profile.vre, label="vre")
ax1.plot(profile.grid, profile.vpe, label="vpe")
ax1.plot(profile.grid, profile.dif, label="dif")
ax1.legend()
ax2.plot(profile.grid, profile.r, label="r")
ax2.set_xlabel("v")
ax2.legend()
fig.savefig(out.with_suffix(".png"))
