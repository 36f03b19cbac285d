"""Geodesics in the native thermodynamic variables and what they mean.

Back in (U, V) coordinates the straight lines become exponentials
U = U0 exp(tau/tau_U), V = V0 exp(tau/tau_V), with the integration
constants tau_U, tau_V acting as relaxation times of the two variables.
The ratio U^(tau_U)/V^(tau_V) is conserved along every geodesic, and the
pair (tau_U, tau_V) pins down the process family: tau_U/tau_V = -cv is an
adiabat, equal times are isobars, infinite times freeze a variable.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gtdkit import (
    GeodesicIVP,
    analytic_ideal_gas,
    conserved_log_ratio,
    fit_relaxation_times,
    ideal_gas_equilibrium_metric,
    integrate,
    process_identify,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

CV = 1.5
metric = ideal_gas_equilibrium_metric()

# velocity (U0/tau_U, V0/tau_V) encodes the relaxation times directly
cases = [
    ((1.0, 1.0), (0.5, 0.4)),
    ((1.0, 1.0), (0.3, 0.8)),
    ((1.0, 3.0), (0.6, -0.4)),
    ((1.0, 3.0), (2.0 / 3.0, -3.0)),  # tau_U/tau_V = 1.5/(-1) = -cv: adiabat
    ((2.0, 1.0), (0.4, 0.2)),         # equal relaxation times: isobar
]

fig, ax = plt.subplots(figsize=(6.5, 5.5))
print(f"{'start':>12} {'rates':>16} {'tau_U':>8} {'tau_V':>8}  process")
for start, velocity in cases:
    trace = integrate(GeodesicIVP(metric, start, velocity, 2.0))
    t_u, t_v = fit_relaxation_times(trace)
    desc = process_identify((t_u, t_v), CV)
    style = "--" if t_u / t_v < 0 else "-"
    ax.plot(trace.coords[:, 0], trace.coords[:, 1], style, lw=1.5, label=desc.kind)
    print(
        f"{str(start):>12} {str(velocity):>16} {t_u:8.3f} {t_v:8.3f}"
        f"  {desc.kind:10s} n={desc.polytropic_index}"
        f"  ratio drift {trace.conserved_ratio_drift:.1e}"
    )

# the adiabatic closed form: tau_U = 1.5, tau_V = -1, conserved ratio exact
exact = analytic_ideal_gas((1.0, 3.0), (1.5, -1.0))
ratio = conserved_log_ratio(exact, np.linspace(0.0, 2.0, 9))
print(f"\nanalytic conserved log-ratio excursion: {np.max(np.abs(ratio - ratio[0])):.2e}")

ax.set_xlabel("U")
ax.set_ylabel("V")
ax.set_title("Equilibrium-space geodesics in the native variables")
handles, labels = ax.get_legend_handles_labels()
if handles:
    ax.legend(loc="best", fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "relaxation_times.png", dpi=150)
print(f"figure written to {OUT / 'relaxation_times.png'}")
