"""Connectivity structure of the equilibrium space around an initial state.

The second law splits the plane around any initial state into a region
its quasi-static processes can reach (entropy up) and a forbidden
triangle (entropy down), separated by the adiabat -- the only locus of
reversible processes.  The forbidden triangle has the closed-form area
(cv*xi_i + eta_i)^2 / (2 cv), cross-checked here by rejection sampling.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gtdkit import (
    adiabat_line,
    classify,
    connect,
    flat_log_metric,
    non_connectivity_area_mc,
    region_geometry,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

CV = 1.5  # monoatomic
initial = (2.0, 3.0)

region = region_geometry(initial, CV)
mc = non_connectivity_area_mc(initial, CV, n_samples=1_000_000, seed=13)
line = adiabat_line(initial, CV)

print(f"initial state (xi, eta) = {initial}, cv = {CV}")
print(f"adiabat intercepts: xi = {line.xi_intercept}, eta = {line.eta_intercept}")
print(f"tan(alpha) = {region.tan_alpha:.6f}, tan(alpha') = {region.tan_alpha_prime:.6f}")
print(f"forbidden area: exact {region.area_nc}, monte carlo {mc:.4f}")

# classify a few targets on both sides of the adiabat
for target in [(3.0, 4.0), (1.0, 2.0), (0.0, 6.0), (4.0, 0.0)]:
    verdict = classify(initial, target, CV).verdict
    print(f"  reach {target}? {verdict}")

fig, ax = plt.subplots(figsize=(6, 6))
xi = np.linspace(0.0, line.xi_intercept, 100)
ax.fill_between(xi, 0.0, [line.eta_of_xi(x) for x in xi], color="0.85", label="forbidden")
ax.plot(xi, [line.eta_of_xi(x) for x in xi], "k-", lw=2, label="adiabat (reversible)")
for target in [(4.5, 5.0), (0.5, 7.0), (6.0, 1.5)]:
    trace = connect(initial, target, flat_log_metric())
    ax.plot(trace.coords[:, 0], trace.coords[:, 1], "tab:green", lw=1)
ax.plot(*initial, "ro", label="initial state")
ax.set_xlabel(r"$\xi$")
ax.set_ylabel(r"$\eta$")
ax.set_xlim(0, 8)
ax.set_ylim(0, 8)
ax.legend(loc="upper right")
ax.set_title(f"Connectivity regions; forbidden area = {region.area_nc}")
fig.tight_layout()
fig.savefig(OUT / "connectivity_regions.png", dpi=150)
print(f"\nfigure written to {OUT / 'connectivity_regions.png'}")
