"""Flatness of the ideal-gas equilibrium space, representation by representation.

The invariant phase metric induces an equilibrium metric from whichever
potential you start from: entropy S(U,V), energy U(S,V), or any of the
three Massieu functions.  The punchline of this demo is that the curvature
vanishes in every single one of them -- the absence of thermodynamic
interaction is a representation-independent geometric fact.
"""

import numpy as np

from gtdkit import (
    curvature,
    ideal_gas_energy,
    ideal_gas_entropy,
    induce_massieu_metrics,
    induce_metric,
    scalar_curvature,
    unit_sphere_metric,
)

metrics = {
    "entropy  S(U,V)": induce_metric(ideal_gas_entropy()),
    "energy   U(S,V)": induce_metric(ideal_gas_energy()),
}
for name, metric in zip(
    ("massieu1 S1(beta,V)", "massieu2 S2(U,theta)", "massieu3 S3(beta,theta)"),
    induce_massieu_metrics(),
):
    metrics[name] = metric

grid = [(x, y) for x in np.geomspace(0.1, 10, 12) for y in np.geomspace(0.1, 10, 12)]

print("max |Riemann| over a 12x12 log grid on [0.1, 10]^2, per representation:")
for name, metric in metrics.items():
    worst = max(
        curvature(metric, p).max_abs_riemann for p in grid if metric.contains(*p)
    )
    print(f"  {name:24s} {worst:.3e}")

# For contrast, a space that is genuinely curved: the unit sphere has
# scalar curvature 2 everywhere.
sphere = unit_sphere_metric()
print("\nunit sphere scalar curvature (should be 2):")
for theta in (0.5, 1.2, 2.6):
    print(f"  theta = {theta:3.1f}: R = {scalar_curvature(sphere, (theta, 0.0)):.12f}")

# The metric components themselves: diagonal 1/x^2 falloff in the
# extensive coordinates, with a non-diagonal term appearing only in the
# energy representation.
g_entropy = np.asarray(metrics["entropy  S(U,V)"].components(2.0, 4.0))
g_energy = np.asarray(metrics["energy   U(S,V)"].components(2.0, 4.0))
print("\nentropy-representation metric at (U, V) = (2, 4):")
print(g_entropy)
print("energy-representation metric at (S, V) = (2, 4) (note the off-diagonal):")
print(g_energy)
