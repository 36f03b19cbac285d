"""Pointwise tensor calculus on two-dimensional Riemannian charts.

Everything is built from the metric components g_ab(x1, x2):

    Gamma^a_bc = (1/2) g^ad (d_c g_db + d_b g_cd - d_d g_bc)
    R^a_bcd    = d_c Gamma^a_bd - d_d Gamma^a_bc
                 + Gamma^a_ec Gamma^e_bd - Gamma^a_ed Gamma^e_bc
    Ric_ab     = g^cd R_acbd,   R = g^ab Ric_ab
    geodesics  : xdd^a = -Gamma^a_bc xd^b xd^c

First partials of g come either from user-supplied analytic partials or
from central finite differences.  The derivatives of Gamma needed for the
curvature are always obtained by differencing the Christoffel evaluation
itself, so analytic metrics never have to supply second partials.

All operations are pure functions of their inputs; nothing is cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .errors import OutOfDomainError, SingularMetricError

__all__ = [
    "Chart",
    "ChartPoint",
    "MetricField",
    "ChristoffelSymbols",
    "CurvatureTensor",
    "CHARTS",
    "register_chart",
    "christoffel",
    "curvature",
    "scalar_curvature",
    "geodesic_rhs",
    "euclidean_metric",
    "unit_sphere_metric",
    "DET_FLOOR",
]

# Relative step for first partials of g (central differences).
_CBRT_EPS = float(np.finfo(float).eps) ** (1.0 / 3.0)
# Relative step for the 4th-order stencil that differentiates Gamma.
_FIFTH_ROOT_EPS = float(np.finfo(float).eps) ** 0.2
# Differencing Gamma below this coordinate scale loses too many digits.
_GAMMA_STEP_SCALE_FLOOR = 0.1
# |det g| must exceed this before the metric is inverted.
DET_FLOOR = 1e-12
_MAX_STENCIL_SHRINKS = 60


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class Chart:
    """A named 2D coordinate chart with a domain predicate."""

    name: str
    coord_names: tuple[str, str]
    contains: Callable[[float, float], bool]


def _always(x: float, y: float) -> bool:
    return True


def _both_positive(x: float, y: float) -> bool:
    return x > 0.0 and y > 0.0


CHARTS: dict[str, Chart] = {}


def register_chart(chart: Chart) -> Chart:
    """Add a chart to the global registry (used by pluggable systems)."""
    CHARTS[chart.name] = chart
    return chart


register_chart(Chart("UV-entropy", ("U", "V"), _both_positive))
register_chart(Chart("SV-energy", ("S", "V"), lambda s, v: v > 0.0))
register_chart(Chart("xi-eta-log", ("xi", "eta"), _always))
register_chart(Chart("beta-V", ("beta", "V"), _both_positive))
register_chart(Chart("U-theta", ("U", "theta"), _both_positive))
register_chart(Chart("beta-theta", ("beta", "theta"), _both_positive))
register_chart(Chart("euclidean", ("x", "y"), _always))
register_chart(Chart("theta-phi", ("theta", "phi"), lambda t, p: 0.0 < t < math.pi))


def get_chart(chart_id: str) -> Chart:
    try:
        return CHARTS[chart_id]
    except KeyError:
        raise KeyError(f"unknown chart {chart_id!r}; register it first") from None


@dataclass(frozen=True)
class ChartPoint:
    """A point of a named chart.  Construction validates the domain."""

    chart_id: str
    coords: tuple[float, float]

    def __post_init__(self) -> None:
        x, y = self.coords
        object.__setattr__(self, "coords", (float(x), float(y)))
        chart = get_chart(self.chart_id)
        if not chart.contains(*self.coords):
            raise OutOfDomainError(
                f"{self.coords} is outside the domain of chart {self.chart_id!r}"
            )


def _xy(point: "ChartPoint | Sequence[float]") -> tuple[float, float]:
    if isinstance(point, ChartPoint):
        return point.coords
    x, y = point
    return float(x), float(y)


def _point_on(metric: "MetricField", point) -> tuple[float, float]:
    if isinstance(point, ChartPoint) and point.chart_id != metric.chart_id:
        raise OutOfDomainError(
            f"point on chart {point.chart_id!r} passed to a metric on chart "
            f"{metric.chart_id!r}"
        )
    return _xy(point)


# ---------------------------------------------------------------------------
# metric fields


@dataclass(frozen=True)
class MetricField:
    """Symmetric 2x2 metric over a chart.

    Parameters
    ----------
    chart_id : str
        Name of a registered chart.
    components : callable (x1, x2) -> 2x2 nested sequence
        Metric components; must be exactly symmetric.
    partials : callable (x1, x2) -> ((d1g11, d1g12, d1g22), (d2g11, d2g12, d2g22)), optional
        Analytic first partials, derivative index first.  When omitted the
        partials are computed by central differences with step
        h = max(cbrt(eps)*|x|, cbrt(eps)).
    domain : callable (x1, x2) -> bool, optional
        Restricts the chart domain (defaults to the chart predicate).
    det_floor : float
        |det g| must exceed this before the metric is inverted; evaluation
        closer to a singularity fails loudly.
    """

    chart_id: str
    components: Callable[[float, float], Any]
    partials: Callable[[float, float], Any] | None = None
    domain: Callable[[float, float], bool] | None = None
    det_floor: float = DET_FLOOR

    @property
    def chart(self) -> Chart:
        return get_chart(self.chart_id)

    @property
    def derivative_source(self) -> str:
        return "analytic" if self.partials is not None else "finite-difference"

    def contains(self, x1: float, x2: float) -> bool:
        chart = get_chart(self.chart_id)
        if not chart.contains(x1, x2):
            return False
        return self.domain is None or bool(self.domain(x1, x2))


def _require_inside(metric: MetricField, x1: float, x2: float) -> None:
    if not metric.contains(x1, x2):
        raise OutOfDomainError(
            f"({x1}, {x2}) is outside the domain of the metric on chart "
            f"{metric.chart_id!r}"
        )


def _components_floats(metric: MetricField, x1: float, x2: float) -> tuple[float, float, float]:
    g = metric.components(x1, x2)
    g11 = float(g[0][0])
    g12 = float(g[0][1])
    g21 = float(g[1][0])
    if g12 != g21:
        raise ValueError(
            f"metric components must be exactly symmetric, got g12={g12!r} g21={g21!r}"
        )
    return g11, g12, float(g[1][1])


def _fd_partials_direction(
    metric: MetricField, x1: float, x2: float, axis: int
) -> tuple[float, float, float]:
    x = (x1, x2)[axis]
    h = max(_CBRT_EPS * abs(x), _CBRT_EPS)
    for _ in range(_MAX_STENCIL_SHRINKS):
        if axis == 0:
            plus, minus = (x1 + h, x2), (x1 - h, x2)
        else:
            plus, minus = (x1, x2 + h), (x1, x2 - h)
        if plus[axis] == minus[axis]:
            break  # step underflowed against the coordinate
        if metric.contains(*plus) and metric.contains(*minus):
            ap, bp, cp = _components_floats(metric, *plus)
            am, bm, cm = _components_floats(metric, *minus)
            span = (plus[axis] - minus[axis])
            return (ap - am) / span, (bp - bm) / span, (cp - cm) / span
        h *= 0.5
    raise OutOfDomainError(
        f"finite-difference stencil for the metric cannot fit inside the domain "
        f"near ({x1}, {x2})"
    )


def _partials_floats(
    metric: MetricField, x1: float, x2: float
) -> tuple[float, float, float, float, float, float]:
    """(d1g11, d1g12, d1g22, d2g11, d2g12, d2g22) at (x1, x2)."""
    if metric.partials is not None:
        d = metric.partials(x1, x2)
        d1, d2 = d[0], d[1]
        return (
            float(d1[0]), float(d1[1]), float(d1[2]),
            float(d2[0]), float(d2[1]), float(d2[2]),
        )
    p1 = _fd_partials_direction(metric, x1, x2, 0)
    p2 = _fd_partials_direction(metric, x1, x2, 1)
    return p1 + p2


def _inverse_floats(
    g11: float, g12: float, g22: float, floor: float = DET_FLOOR
) -> tuple[float, float, float, float]:
    det = g11 * g22 - g12 * g12
    if abs(det) < floor:
        raise SingularMetricError(f"|det g| = {abs(det):.3e} is below the {floor} floor")
    return g22 / det, -g12 / det, g11 / det, det


def _christoffel_packed(
    metric: MetricField, x1: float, x2: float
) -> tuple[float, float, float, float, float, float]:
    """(G111, G112, G122, G211, G212, G222) with Gabc = Gamma^a_bc, b <= c."""
    _require_inside(metric, x1, x2)
    g11, g12, g22 = _components_floats(metric, x1, x2)
    i11, i12, i22, _ = _inverse_floats(g11, g12, g22, metric.det_floor)
    p111, p112, p122, p211, p212, p222 = _partials_floats(metric, x1, x2)
    # Lowered symbols Gamma_{d,bc} = (1/2)(d_c g_db + d_b g_cd - d_d g_bc)
    l1_11 = 0.5 * p111
    l2_11 = p112 - 0.5 * p211
    l1_12 = 0.5 * p211
    l2_12 = 0.5 * p122
    l1_22 = p212 - 0.5 * p122
    l2_22 = 0.5 * p222
    return (
        i11 * l1_11 + i12 * l2_11,
        i11 * l1_12 + i12 * l2_12,
        i11 * l1_22 + i12 * l2_22,
        i12 * l1_11 + i22 * l2_11,
        i12 * l1_12 + i22 * l2_12,
        i12 * l1_22 + i22 * l2_22,
    )


# ---------------------------------------------------------------------------
# public tensor types


@dataclass(frozen=True)
class ChristoffelSymbols:
    """Connection components Gamma^a_bc at a point, symmetric in b <-> c."""

    values: np.ndarray = field(repr=False)

    @classmethod
    def from_packed(cls, packed: Sequence[float]) -> "ChristoffelSymbols":
        g111, g112, g122, g211, g212, g222 = packed
        arr = np.array(
            [[[g111, g112], [g112, g122]], [[g211, g212], [g212, g222]]], dtype=float
        )
        arr.flags.writeable = False
        return cls(arr)

    def component(self, a: int, b: int, c: int) -> float:
        return float(self.values[a, b, c])

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class CurvatureTensor:
    """Riemann tensor R^a_bcd with its Ricci contraction and scalar."""

    riemann: np.ndarray = field(repr=False)
    ricci: np.ndarray = field(repr=False)
    scalar: float = 0.0

    @property
    def max_abs_riemann(self) -> float:
        return float(np.max(np.abs(self.riemann)))


# ---------------------------------------------------------------------------
# operations


def christoffel(metric: MetricField, point) -> ChristoffelSymbols:
    """Connection components of `metric` at `point`.

    Raises OutOfDomainError outside the metric domain and
    SingularMetricError where |det g| falls below DET_FLOOR.
    """
    x1, x2 = _point_on(metric, point)
    return ChristoffelSymbols.from_packed(_christoffel_packed(metric, x1, x2))


def _gamma_derivative(
    metric: MetricField, x1: float, x2: float, axis: int
) -> tuple[float, float, float, float, float, float]:
    """4th-order central derivative of the packed Christoffel map."""
    x = (x1, x2)[axis]
    h = _FIFTH_ROOT_EPS * max(abs(x), _GAMMA_STEP_SCALE_FLOOR)

    def at(offset: float):
        if axis == 0:
            return _christoffel_packed(metric, x1 + offset, x2)
        return _christoffel_packed(metric, x1, x2 + offset)

    for _ in range(_MAX_STENCIL_SHRINKS):
        if x + h == x:
            break  # step underflowed against the coordinate
        try:
            f_m2, f_m1, f_p1, f_p2 = at(-2 * h), at(-h), at(h), at(2 * h)
        except OutOfDomainError:
            h *= 0.5
            continue
        return tuple(
            (a - 8.0 * b + 8.0 * c - d) / (12.0 * h)
            for a, b, c, d in zip(f_m2, f_m1, f_p1, f_p2)
        )
    raise OutOfDomainError(
        f"stencil for the connection derivative cannot fit inside the domain "
        f"near ({x1}, {x2})"
    )


def curvature(metric: MetricField, point) -> CurvatureTensor:
    """Riemann, Ricci and scalar curvature of `metric` at `point`.

    The connection derivatives are computed by differencing the
    Christoffel evaluation, so the analytic/finite-difference policy of
    the metric applies uniformly underneath.
    """
    x1, x2 = _point_on(metric, point)
    _require_inside(metric, x1, x2)
    gamma = _christoffel_packed(metric, x1, x2)
    d1 = _gamma_derivative(metric, x1, x2, 0)
    d2 = _gamma_derivative(metric, x1, x2, 1)

    # Packed index: a*3 + b + c, since (b,c) in {(0,0),(0,1),(1,1)} -> 0,1,2.
    riem = np.zeros((2, 2, 2, 2))
    for a in range(2):
        for b in range(2):
            # R^a_b12 = d_1 Gamma^a_b2 - d_2 Gamma^a_b1 + Gamma^a_e1 Gamma^e_b2
            #           - Gamma^a_e2 Gamma^e_b1
            val = d1[a * 3 + b + 1] - d2[a * 3 + b]
            for e in range(2):
                val += gamma[a * 3 + e] * gamma[e * 3 + b + 1]
                val -= gamma[a * 3 + e + 1] * gamma[e * 3 + b]
            riem[a, b, 0, 1] = val
            riem[a, b, 1, 0] = -val

    g11, g12, g22 = _components_floats(metric, x1, x2)
    gmat = ((g11, g12), (g12, g22))
    i11, i12, i22, _ = _inverse_floats(g11, g12, g22, metric.det_floor)
    ginv = ((i11, i12), (i12, i22))

    low = np.zeros((2, 2, 2, 2))
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for dd in range(2):
                    low[a, b, c, dd] = (
                        gmat[a][0] * riem[0, b, c, dd] + gmat[a][1] * riem[1, b, c, dd]
                    )

    ricci = np.zeros((2, 2))
    for a in range(2):
        for b in range(2):
            s = 0.0
            for c in range(2):
                for dd in range(2):
                    s += ginv[c][dd] * low[a, c, b, dd]
            ricci[a, b] = s

    scalar = sum(ginv[a][b] * ricci[a, b] for a in range(2) for b in range(2))
    riem.flags.writeable = False
    ricci.flags.writeable = False
    return CurvatureTensor(riemann=riem, ricci=ricci, scalar=float(scalar))


def scalar_curvature(metric: MetricField, point) -> float:
    """Curvature scalar R = g^ab Ric_ab at `point`."""
    return curvature(metric, point).scalar


def geodesic_rhs(metric: MetricField, point, velocity) -> tuple[float, float]:
    """Acceleration (xdd^1, xdd^2) = -Gamma^a_bc xd^b xd^c at `point`."""
    x1, x2 = _point_on(metric, point)
    v1, v2 = float(velocity[0]), float(velocity[1])
    g111, g112, g122, g211, g212, g222 = _christoffel_packed(metric, x1, x2)
    q11 = v1 * v1
    q12 = 2.0 * v1 * v2
    q22 = v2 * v2
    return (
        -(g111 * q11 + g112 * q12 + g122 * q22),
        -(g211 * q11 + g212 * q12 + g222 * q22),
    )


# ---------------------------------------------------------------------------
# stock metrics


def euclidean_metric(chart_id: str = "euclidean") -> MetricField:
    """Identity metric components on the given chart."""
    return MetricField(
        chart_id=chart_id,
        components=lambda x, y: ((1.0, 0.0), (0.0, 1.0)),
        partials=lambda x, y: ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0)),
    )


def unit_sphere_metric() -> MetricField:
    """Round metric dtheta^2 + sin(theta)^2 dphi^2 on the 'theta-phi' chart."""

    def comps(t: float, p: float):
        s = math.sin(t)
        return ((1.0, 0.0), (0.0, s * s))

    def parts(t: float, p: float):
        return ((0.0, 0.0, 2.0 * math.sin(t) * math.cos(t)), (0.0, 0.0, 0.0))

    return MetricField(chart_id="theta-phi", components=comps, partials=parts)
