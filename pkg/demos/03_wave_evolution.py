"""Evolve a small smooth wave and watch the conserved and monitored quantities.

Run:  python3 demos/03_wave_evolution.py
Writes demo_out/evolution.png when matplotlib is available.
"""

import math
from pathlib import Path

import numpy as np

from lasw import (
    Grid,
    IntegrationControls,
    from_physical,
    integrate,
    preset_normalized,
    to_physical,
)

TWO_PI = 2.0 * math.pi

grid = Grid(128)
u0 = from_physical(0.05 * np.cos(TWO_PI * grid.x), grid)
controls = IntegrationControls(
    sample_interval=0.2, snapshot_times=(0.0, 1.0, 2.0), s_exponent=2.0
)
result = integrate(u0, preset_normalized(), 2.0, controls)

print(f"status: {result.state.status.value} at t = {result.state.t:g}")
print(f"{'t':>6} {'mean':>12} {'L2':>12} {'H^2':>12} {'sup|u_x|':>10} {'tail':>10}")
for r in result.records:
    print(f"{r.t:6.2f} {r.mean:12.3e} {r.l2:12.9f} {r.hs:12.9f} {r.sup_ux:10.5f} {r.tail:10.2e}")

drift = abs(result.records[-1].mean - result.records[0].mean)
print(f"\nmean drift over the whole run: {drift:.2e}  (conservation-law structure)")
print("the tail column is the resolution monitor; it stays at round-off here")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path("demo_out")
    out.mkdir(exist_ok=True)
    fig, ax = plt.subplots(figsize=(7, 4))
    for t_snap, field in result.snapshots:
        ax.plot(field.grid.x, to_physical(field), label=f"t = {t_snap:g}")
    ax.set_xlabel("x")
    ax.set_ylabel("u")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "evolution.png", dpi=120)
    print(f"wrote {out / 'evolution.png'}")
except ImportError:
    print("matplotlib not available; skipping the plot")
