"""Phase-space structures: Gibbs forms, Legendre maps, invariant metrics.

The five-dimensional phase space carries, per representation,

    energy  coords (U, S, V, T, P):
        Theta = dU - T dS + P dV
        G = Theta^2 + scale * [ (S T)^(2k+1) dS dT + (V P)^(2k+1) dV dP ]
    entropy coords (S, U, V, beta, theta), beta = 1/T, theta = P/T:
        Theta = dS - beta dU - theta dV
        G = Theta^2 + scale * [ (U beta)^(2k+1) dU dbeta
                                + (V theta)^(2k+1) dV dtheta ]

Both structures are invariant under the three Legendre coordinate
changes of their representation, which is what makes every derived
result independent of the choice of thermodynamic potential.  Projecting
G onto the equilibrium surface (where Theta vanishes, i.e. the first
law holds) induces a 2x2 metric built from the potential's first and
second partials; `induce_metric` implements that projection for any
fundamental equation.

A quadratic-form cross term c * dx dy always contributes c/2 to each of
the (x, y) and (y, x) matrix slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import OutOfDomainError
from .manifold import MetricField
from .thermo import FundamentalEquation, GasParameters, massieu_functions

__all__ = [
    "PhasePoint",
    "MetricRecipe",
    "CANONICAL_RECIPE",
    "LegendreMap",
    "legendre_map",
    "gibbs_form",
    "phase_metric",
    "legendre_transform_point",
    "legendre_pushforward_check",
    "InducedMetric",
    "induce_metric",
    "induce_massieu_metrics",
    "log_diagonal_metric",
    "ideal_gas_equilibrium_metric",
    "flat_log_metric",
    "check_first_law",
    "ENERGY_COORD_NAMES",
    "ENTROPY_COORD_NAMES",
]

ENERGY_COORD_NAMES = ("U", "S", "V", "T", "P")
ENTROPY_COORD_NAMES = ("S", "U", "V", "beta", "theta")


@dataclass(frozen=True)
class PhasePoint:
    """A point of the unconstrained 5D phase space."""

    representation: str
    coords: tuple[float, float, float, float, float]

    def __post_init__(self) -> None:
        if self.representation not in ("energy", "entropy"):
            raise ValueError("representation must be 'energy' or 'entropy'")
        if len(self.coords) != 5:
            raise ValueError("phase points carry exactly 5 coordinates")
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))


@dataclass(frozen=True)
class MetricRecipe:
    """Free constants of the invariant phase metric.

    `scale` multiplies the extensive-intensive coupling block and `k`
    sets its odd exponent 2k+1.  The canonical choice (-1, -1) is the
    one for which the induced ideal-gas area functional is extremal and
    every closed-form result below holds.
    """

    scale: float = -1.0
    k: int = -1

    def __post_init__(self) -> None:
        if self.scale == 0.0:
            raise ValueError("recipe scale must be nonzero")
        if not isinstance(self.k, int):
            raise ValueError("recipe k must be an integer")

    @property
    def exponent(self) -> int:
        return 2 * self.k + 1


CANONICAL_RECIPE = MetricRecipe()


# ---------------------------------------------------------------------------
# Gibbs form and phase metric


def gibbs_form(p: PhasePoint) -> tuple[float, float, float, float, float]:
    """Covector components of the fundamental one-form at `p`.

    Energy representation, against (dU, dS, dV, dT, dP): (1, -T, P, 0, 0).
    Entropy representation, against (dS, dU, dV, dbeta, dtheta):
    (1, -beta, -theta, 0, 0).
    """
    if p.representation == "energy":
        _, _, _, t, pr = p.coords
        return (1.0, -t, pr, 0.0, 0.0)
    _, _, _, beta, theta = p.coords
    return (1.0, -beta, -theta, 0.0, 0.0)


def _coupling_pairs(p: PhasePoint) -> tuple[tuple[int, int, float], tuple[int, int, float]]:
    """Index pairs and products entering the coupling block of G."""
    if p.representation == "energy":
        _, s, v, t, pr = p.coords
        return (1, 3, s * t), (2, 4, v * pr)
    _, u, v, beta, theta = p.coords
    return (1, 3, u * beta), (2, 4, v * theta)


def phase_metric(p: PhasePoint, recipe: MetricRecipe = CANONICAL_RECIPE) -> np.ndarray:
    """Symmetric 5x5 matrix of the invariant metric G at `p`."""
    theta = gibbs_form(p)
    g = np.outer(theta, theta)
    m = recipe.exponent
    for i, j, prod in _coupling_pairs(p):
        if prod == 0.0 and m < 0:
            raise OutOfDomainError(
                "coupling product vanishes while its exponent is negative"
            )
        half = 0.5 * recipe.scale * prod**m
        g[i, j] += half
        g[j, i] += half
    return g


# ---------------------------------------------------------------------------
# Legendre transformations


def _forward(rep: str, which: int, c: Sequence[float]) -> tuple[float, ...]:
    if which == 0:
        return tuple(c)
    if rep == "energy":
        u, s, v, t, p = c
        if which == 1:
            return (u - t * s, t, v, -s, p)
        if which == 2:
            return (u + p * v, s, -p, t, v)
        if which == 3:
            return (u - t * s + p * v, t, -p, -s, v)
    else:
        s, u, v, beta, theta = c
        if which == 1:
            return (s - u * beta, beta, v, -u, theta)
        if which == 2:
            return (s - v * theta, u, theta, beta, -v)
        if which == 3:
            return (s - u * beta - v * theta, beta, theta, -u, -v)
    raise ValueError("which must be 0 (identity), 1, 2 or 3")


def _inverse(rep: str, which: int, c: Sequence[float]) -> tuple[float, ...]:
    if which == 0:
        return tuple(c)
    if rep == "energy":
        u, s, v, t, p = c
        if which == 1:
            return (u - s * t, -t, v, s, p)
        if which == 2:
            return (u + v * p, s, p, t, -v)
        if which == 3:
            return (u - s * t + v * p, -t, p, s, -v)
    else:
        s, u, v, beta, theta = c
        if which == 1:
            return (s - u * beta, -beta, v, u, theta)
        if which == 2:
            return (s - v * theta, u, -theta, beta, v)
        if which == 3:
            return (s - u * beta - v * theta, -beta, -theta, u, v)
    raise ValueError("which must be 0 (identity), 1, 2 or 3")


def _jacobian(rep: str, which: int, c: Sequence[float]) -> np.ndarray:
    """d(new)/d(old) of the forward map at the old coordinates `c`."""
    j = np.eye(5)
    if which == 0:
        return j
    if rep == "energy":
        u, s, v, t, p = c
        if which == 1:
            j = np.array([
                [1.0, -t, 0.0, -s, 0.0],
                [0.0, 0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0],
                [0.0, -1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 1.0],
            ])
        elif which == 2:
            j = np.array([
                [1.0, 0.0, p, 0.0, v],
                [0.0, 1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, -1.0],
                [0.0, 0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0],
            ])
        elif which == 3:
            j = np.array([
                [1.0, -t, p, -s, v],
                [0.0, 0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, -1.0],
                [0.0, -1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0],
            ])
        else:
            raise ValueError("which must be 0, 1, 2 or 3")
    else:
        s, u, v, beta, theta = c
        if which == 1:
            j = np.array([
                [1.0, -beta, 0.0, -u, 0.0],
                [0.0, 0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0, 0.0, 0.0],
                [0.0, -1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 1.0],
            ])
        elif which == 2:
            j = np.array([
                [1.0, 0.0, -theta, 0.0, -v],
                [0.0, 1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, -1.0, 0.0, 0.0],
            ])
        elif which == 3:
            j = np.array([
                [1.0, -beta, -theta, -u, -v],
                [0.0, 0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 0.0, 1.0],
                [0.0, -1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, -1.0, 0.0, 0.0],
            ])
        else:
            raise ValueError("which must be 0, 1, 2 or 3")
    return j


@dataclass(frozen=True)
class LegendreMap:
    """One of the three phase-space coordinate changes of a representation.

    which=1 swaps the first extensive-intensive pair (Helmholtz-like),
    which=2 the second (enthalpy-like), which=3 both (Gibbs-like);
    which=0 is the identity, kept for diagnostics.
    """

    representation: str
    which: int

    def forward(self, coords: Sequence[float]) -> tuple[float, ...]:
        return _forward(self.representation, self.which, coords)

    def inverse(self, coords: Sequence[float]) -> tuple[float, ...]:
        return _inverse(self.representation, self.which, coords)

    def jacobian(self, coords: Sequence[float]) -> np.ndarray:
        return _jacobian(self.representation, self.which, coords)


def legendre_map(representation: str, which: int) -> LegendreMap:
    if representation not in ("energy", "entropy"):
        raise ValueError("representation must be 'energy' or 'entropy'")
    if which not in (0, 1, 2, 3):
        raise ValueError("which must be 0 (identity), 1, 2 or 3")
    return LegendreMap(representation, which)


def legendre_transform_point(p: PhasePoint, which: int) -> PhasePoint:
    """Apply the exact coordinate map `which` to a phase point."""
    return PhasePoint(p.representation, _forward(p.representation, which, p.coords))


def legendre_pushforward_check(
    rep: str,
    which: int,
    recipe: MetricRecipe,
    samples: Iterable[Sequence[float]],
) -> float:
    """Max pullback residual of G and of the Gibbs form over `samples`.

    For each sample p the metric (and form) is evaluated at the image
    point in the same functional shape, pulled back through the exact
    Jacobian, and compared entrywise with the value at p.  Invariance
    means the result is zero up to roundoff.
    """
    lmap = legendre_map(rep, which)
    worst = 0.0
    for coords in samples:
        p = PhasePoint(rep, tuple(coords))
        q = PhasePoint(rep, lmap.forward(p.coords))
        jac = lmap.jacobian(p.coords)
        g_back = jac.T @ phase_metric(q, recipe) @ jac
        worst = max(worst, float(np.max(np.abs(g_back - phase_metric(p, recipe)))))
        theta_back = jac.T @ np.asarray(gibbs_form(q))
        worst = max(worst, float(np.max(np.abs(theta_back - np.asarray(gibbs_form(p))))))
    return worst


# ---------------------------------------------------------------------------
# induced equilibrium metrics


@dataclass(frozen=True)
class InducedMetric(MetricField):
    """Equilibrium metric induced from a fundamental equation.

    Carries its provenance so downstream consumers can recover the gas
    parameters and the recipe it was built with.
    """

    source: FundamentalEquation | None = None
    recipe: MetricRecipe | None = None


def induce_metric(fe: FundamentalEquation, recipe: MetricRecipe = CANONICAL_RECIPE) -> InducedMetric:
    """Project the invariant phase metric onto the equilibrium surface of `fe`.

    The result, over the chart of the fundamental equation with
    coordinates (x, y) and potential f,

        g = scale * [ (x f_x)^(2k+1) f_xx dx^2 + (y f_y)^(2k+1) f_yy dy^2
                      + ((x f_x)^(2k+1) + (y f_y)^(2k+1)) f_xy dx dy ]

    has analytic partials assembled from the potential's derivatives up
    to third order.  Points where a coupling product vanishes while its
    exponent is negative are excluded from the metric domain.
    """
    lam = recipe.scale
    m = recipe.exponent

    def weights(x: float, y: float) -> tuple[float, float]:
        f1, f2 = fe.d1(x, y)
        p1, p2 = x * f1, y * f2
        if m < 0 and (p1 == 0.0 or p2 == 0.0):
            raise OutOfDomainError(
                "extensive-intensive product vanishes while the recipe exponent "
                "is negative"
            )
        return p1**m, p2**m

    def comps(x: float, y: float):
        w1, w2 = weights(x, y)
        f11, f12, f22 = fe.d2(x, y)
        g12 = 0.5 * lam * (w1 + w2) * f12
        return ((lam * w1 * f11, g12), (g12, lam * w2 * f22))

    def parts(x: float, y: float):
        f1, f2 = fe.d1(x, y)
        f11, f12, f22 = fe.d2(x, y)
        f111, f112, f122, f222 = fe.d3(x, y)
        p1, p2 = x * f1, y * f2
        if m < 0 and (p1 == 0.0 or p2 == 0.0):
            raise OutOfDomainError(
                "extensive-intensive product vanishes while the recipe exponent "
                "is negative"
            )
        w1, w2 = p1**m, p2**m
        dw1 = (m * p1 ** (m - 1) * (f1 + x * f11), m * p1 ** (m - 1) * (x * f12))
        dw2 = (m * p2 ** (m - 1) * (y * f12), m * p2 ** (m - 1) * (f2 + y * f22))
        d1 = (
            lam * (dw1[0] * f11 + w1 * f111),
            0.5 * lam * ((dw1[0] + dw2[0]) * f12 + (w1 + w2) * f112),
            lam * (dw2[0] * f22 + w2 * f122),
        )
        d2 = (
            lam * (dw1[1] * f11 + w1 * f112),
            0.5 * lam * ((dw1[1] + dw2[1]) * f12 + (w1 + w2) * f122),
            lam * (dw2[1] * f22 + w2 * f222),
        )
        return (d1, d2)

    def domain(x: float, y: float) -> bool:
        if not fe.domain(x, y):
            return False
        if m >= 0:
            return True
        f1, f2 = fe.d1(x, y)
        return x * f1 != 0.0 and y * f2 != 0.0

    return InducedMetric(
        chart_id=fe.chart_id,
        components=comps,
        partials=parts,
        domain=domain,
        source=fe,
        recipe=recipe,
    )


def induce_massieu_metrics(
    params: GasParameters | None = None, recipe: MetricRecipe = CANONICAL_RECIPE
) -> tuple[InducedMetric, InducedMetric, InducedMetric]:
    """Equilibrium metrics induced from the three Massieu potentials."""
    return tuple(induce_metric(fe, recipe) for fe in massieu_functions(params))


def log_diagonal_metric(chart_id: str) -> MetricField:
    """Closed form dx^2/x^2 + dy^2/y^2 on an all-positive chart.

    This is the shape every canonical ideal-gas equilibrium metric takes
    in its own representation coordinates.
    """

    def comps(x: float, y: float):
        return ((1.0 / (x * x), 0.0), (0.0, 1.0 / (y * y)))

    def parts(x: float, y: float):
        return ((-2.0 / (x * x * x), 0.0, 0.0), (0.0, 0.0, -2.0 / (y * y * y)))

    return MetricField(
        chart_id=chart_id,
        components=comps,
        partials=parts,
        domain=lambda x, y: x > 0.0 and y > 0.0,
    )


def ideal_gas_equilibrium_metric(params: GasParameters | None = None) -> MetricField:
    """Closed-form canonical equilibrium metric dU^2/U^2 + dV^2/V^2.

    Equal (to roundoff) to inducing the entropy fundamental equation
    with the canonical recipe; the parameters do not enter because the
    canonical exponent cancels every constant prefactor.
    """
    return log_diagonal_metric("UV-entropy")


def flat_log_metric() -> MetricField:
    """Euclidean metric on the logarithmic chart (xi, eta) = (ln U, ln V)."""
    return MetricField(
        chart_id="xi-eta-log",
        components=lambda x, y: ((1.0, 0.0), (0.0, 1.0)),
        partials=lambda x, y: ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0)),
    )


# ---------------------------------------------------------------------------
# first law


def check_first_law(
    fe: FundamentalEquation,
    samples: Iterable[Sequence[float]],
    intensives=None,
) -> float:
    """Max |Theta(tangent)| over the equilibrium surface of `fe`.

    Each sample is embedded into the phase space with intensives taken
    from the potential's own first partials (or from `intensives`, a
    callable returning the physical pair -- (T, P) for the energy
    representation, (beta, theta) otherwise -- to probe corrupted
    embeddings).  The Gibbs form is evaluated on both coordinate
    tangents of the surface; for a consistent embedding the residual
    vanishes identically.
    """
    energy = fe.representation == "energy"

    def default_conj(x: float, y: float):
        f1, f2 = fe.d1(x, y)
        return (f1, -f2) if energy else (f1, f2)

    conj = intensives or default_conj
    worst = 0.0
    for coords in samples:
        x, y = float(coords[0]), float(coords[1])
        if not fe.domain(x, y):
            raise OutOfDomainError(f"sample ({x}, {y}) is outside the domain")
        f1, f2 = fe.d1(x, y)
        c1, c2 = conj(x, y)
        if energy:
            # Theta(tangents) = (U_S - T, U_V + P)
            r1, r2 = f1 - c1, f2 + c2
        else:
            # Theta(tangents) = (S_U - beta, S_V - theta)
            r1, r2 = f1 - c1, f2 - c2
        worst = max(worst, abs(r1), abs(r2))
    return worst
