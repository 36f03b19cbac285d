"""Geodesics of equilibrium metrics and their thermodynamic reading.

Numerical side: a classic 4th-order Runge-Kutta integrator with
step-doubling error control drives the geodesic equation of any
MetricField.  Analytic side: on the canonical ideal-gas metrics each
chart coordinate evolves exponentially,

    Z(tau) = Z0 * exp(tau / tau_Z),

with the integration constants tau_Z acting as relaxation times, and
Z1^(tau_1) / Z2^(tau_2) conserved along the curve (handled in log space
here).  A constant coordinate is encoded with an infinite relaxation
time; tau_Z = 0 has no meaning in the exponential form.

Thermodynamic reading (logarithmic chart, xi = ln U, eta = ln V):
entropy changes by nkb * (cv * dxi + deta), so a target state is
reachable iff that combination is nonnegative; equality is the
reversible, adiabatic boundary.  The adiabat through an initial state is
the straight line

    xi/(xi_i + eta_i/cv) + eta/(eta_i + cv*xi_i) = 1,

and the states it cuts off (the second-law-forbidden ones) fill a
triangle of area (cv*xi_i + eta_i)^2 / (2*cv).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    OutOfDomainError,
    SingularMetricError,
    StepUnderflowError,
    ThirdLawError,
)
from .manifold import MetricField, _christoffel_packed, _components_floats
from .thermo import GasParameters

__all__ = [
    "GeodesicIVP",
    "GeodesicTrace",
    "AnalyticGeodesicIG",
    "ProcessClassification",
    "ProcessDescriptor",
    "RegionGeometry",
    "AdiabatLine",
    "integrate",
    "analytic_ideal_gas",
    "fit_relaxation_times",
    "conserved_log_ratio",
    "classify",
    "region_geometry",
    "adiabat_line",
    "non_connectivity_area_mc",
    "process_identify",
    "connect",
    "entropy_values",
    "EXPONENTIAL_CHARTS",
]

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

# Charts on which the canonical equilibrium metric is dx^2/x^2 + dy^2/y^2
# and geodesic coordinates are exponential in the affine parameter.
EXPONENTIAL_CHARTS = ("UV-entropy", "beta-V", "U-theta", "beta-theta")

# |cv*dxi + deta| below this scaled threshold counts as adiabatic.
_ADIABATIC_RTOL = 1e-12
# Relative log-variation below which a traced coordinate counts as constant.
_CONSTANT_COORD_RTOL = 1e-12


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class GeodesicIVP:
    """Initial-value problem for the geodesic equation.

    `tau_span` is [0, tau_max].  `step` is the base integration step
    (default tau_max/1000); the integrator halves it transiently whenever
    the step-doubling local error estimate exceeds `tolerance`.
    """

    metric: MetricField
    start: tuple[float, float]
    velocity: tuple[float, float]
    tau_max: float
    step: float | None = None
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", (float(self.start[0]), float(self.start[1])))
        object.__setattr__(
            self, "velocity", (float(self.velocity[0]), float(self.velocity[1]))
        )
        if not self.tau_max > 0.0:
            raise ValueError("tau_max must be positive")
        if self.step is not None and not self.step > 0.0:
            raise ValueError("step must be positive")
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")
        if not self.metric.contains(*self.start):
            raise OutOfDomainError(f"start {self.start} is outside the metric domain")


@dataclass(frozen=True)
class GeodesicTrace:
    """A sampled geodesic with conservation diagnostics.

    `arc_length` integrates sqrt(|g(v, v)|) over the samples.
    `conserved_ratio_drift` is the worst excursion of the log-space
    conserved ratio (None on charts where the ratio is undefined).
    `domain_exit` marks a trace that was truncated at the chart border.
    """

    chart_id: str
    tau: np.ndarray = field(repr=False)
    coords: np.ndarray = field(repr=False)
    velocity: np.ndarray = field(repr=False)
    arc_length: float = 0.0
    conserved_ratio_drift: float | None = None
    domain_exit: bool = False
    orientation_flipped: bool = False

    @property
    def n_samples(self) -> int:
        return len(self.tau)

    @property
    def endpoint(self) -> tuple[float, float]:
        return (float(self.coords[-1, 0]), float(self.coords[-1, 1]))

    @property
    def start(self) -> tuple[float, float]:
        return (float(self.coords[0, 0]), float(self.coords[0, 1]))


def _rhs(metric: MetricField, x1: float, x2: float, v1: float, v2: float):
    g111, g112, g122, g211, g212, g222 = _christoffel_packed(metric, x1, x2)
    q11 = v1 * v1
    q12 = 2.0 * v1 * v2
    q22 = v2 * v2
    return (
        v1,
        v2,
        -(g111 * q11 + g112 * q12 + g122 * q22),
        -(g211 * q11 + g212 * q12 + g222 * q22),
    )


def _rk4(metric, x1, x2, v1, v2, h):
    h2 = 0.5 * h
    a = _rhs(metric, x1, x2, v1, v2)
    b = _rhs(metric, x1 + h2 * a[0], x2 + h2 * a[1], v1 + h2 * a[2], v2 + h2 * a[3])
    c = _rhs(metric, x1 + h2 * b[0], x2 + h2 * b[1], v1 + h2 * b[2], v2 + h2 * b[3])
    d = _rhs(metric, x1 + h * c[0], x2 + h * c[1], v1 + h * c[2], v2 + h * c[3])
    s = h / 6.0
    return (
        x1 + s * (a[0] + 2.0 * (b[0] + c[0]) + d[0]),
        x2 + s * (a[1] + 2.0 * (b[1] + c[1]) + d[1]),
        v1 + s * (a[2] + 2.0 * (b[2] + c[2]) + d[2]),
        v2 + s * (a[3] + 2.0 * (b[3] + c[3]) + d[3]),
    )


def _finish_trace(
    metric: MetricField,
    taus: list[float],
    coords: list[tuple[float, float]],
    vels: list[tuple[float, float]],
    domain_exit: bool,
    orientation_flipped: bool = False,
) -> GeodesicTrace:
    tau_arr = np.asarray(taus)
    xy = np.asarray(coords)
    vv = np.asarray(vels)
    speed = np.empty(len(taus))
    for i, ((x1, x2), (v1, v2)) in enumerate(zip(coords, vels)):
        g11, g12, g22 = _components_floats(metric, x1, x2)
        speed[i] = math.sqrt(abs(g11 * v1 * v1 + 2.0 * g12 * v1 * v2 + g22 * v2 * v2))
    arc = float(_trapezoid(speed, tau_arr)) if len(taus) > 1 else 0.0
    return GeodesicTrace(
        chart_id=metric.chart_id,
        tau=tau_arr,
        coords=xy,
        velocity=vv,
        arc_length=arc,
        conserved_ratio_drift=_drift_of(metric.chart_id, tau_arr, xy),
        domain_exit=domain_exit,
        orientation_flipped=orientation_flipped,
    )


def integrate(ivp: GeodesicIVP) -> GeodesicTrace:
    """Integrate the geodesic equation over [0, tau_max].

    Uses fixed-step RK4 with step halving whenever the step-doubling
    local error exceeds the tolerance.  If the curve leaves the chart
    domain the partial trace is returned with `domain_exit` set; a step
    that cannot reach the tolerance at any resolvable size raises
    StepUnderflowError.
    """
    metric = ivp.metric
    x1, x2 = ivp.start
    v1, v2 = ivp.velocity
    if v1 == 0.0 and v2 == 0.0:
        # Stationary solution: a single-sample constant trace.
        return _finish_trace(metric, [0.0], [(x1, x2)], [(0.0, 0.0)], False)

    _components_floats(metric, x1, x2)  # surface malformed metrics up front

    tau_max = float(ivp.tau_max)
    base = ivp.step if ivp.step is not None else tau_max / 1000.0
    tol = ivp.tolerance
    h_floor = tau_max * 1e-12

    taus = [0.0]
    coords = [(x1, x2)]
    vels = [(v1, v2)]
    tau = 0.0
    exited = False

    while (tau_max - tau) > 1e-14 * tau_max:
        h = min(base, tau_max - tau)
        while True:
            try:
                full = _rk4(metric, x1, x2, v1, v2, h)
                mid = _rk4(metric, x1, x2, v1, v2, 0.5 * h)
                half = _rk4(metric, *mid, 0.5 * h)
            except (OutOfDomainError, SingularMetricError):
                # Left the chart domain or hit the invertibility floor:
                # shrink toward the boundary, then truncate cleanly.
                h *= 0.5
                if h < h_floor:
                    exited = True
                    break
                continue
            except (ValueError, OverflowError):
                # Numerical blow-up inside a trial step: treat like an
                # oversized local error and retry smaller.
                err = math.inf
            else:
                if not metric.contains(half[0], half[1]):
                    h *= 0.5
                    if h < h_floor:
                        exited = True
                        break
                    continue
                if all(map(math.isfinite, full)) and all(map(math.isfinite, half)):
                    err = max(
                        abs(full[0] - half[0]) / (1.0 + abs(half[0])),
                        abs(full[1] - half[1]) / (1.0 + abs(half[1])),
                        abs(full[2] - half[2]) / (1.0 + abs(half[2])),
                        abs(full[3] - half[3]) / (1.0 + abs(half[3])),
                    )
                else:
                    err = math.inf
            if err <= tol:
                break
            h *= 0.5
            if h < h_floor:
                raise StepUnderflowError(
                    f"cannot meet local tolerance {tol} near tau={tau}"
                )
        if exited:
            break
        x1, x2, v1, v2 = half
        tau += h
        taus.append(tau)
        coords.append((x1, x2))
        vels.append((v1, v2))

    return _finish_trace(metric, taus, coords, vels, exited)


# ---------------------------------------------------------------------------
# analytic ideal-gas geodesics


def _exp_coord(z0: float, tau_z: float, tau: float) -> float:
    return z0 * math.exp(tau / tau_z) if math.isfinite(tau_z) else z0


@dataclass(frozen=True)
class AnalyticGeodesicIG:
    """Closed-form geodesic Z(tau) = Z0 * exp(tau/tau_Z) componentwise.

    An infinite relaxation time encodes a constant coordinate.
    """

    start: tuple[float, float]
    taus: tuple[float, float]
    chart_id: str = "UV-entropy"

    def __post_init__(self) -> None:
        u0, v0 = self.start
        if not (u0 > 0.0 and v0 > 0.0):
            raise ValueError("analytic geodesics require positive start coordinates")
        if 0.0 in self.taus:
            raise ValueError(
                "a zero relaxation time is singular; encode a constant coordinate "
                "with math.inf"
            )

    def position(self, tau: float) -> tuple[float, float]:
        return (
            _exp_coord(self.start[0], self.taus[0], tau),
            _exp_coord(self.start[1], self.taus[1], tau),
        )

    def velocity(self, tau: float) -> tuple[float, float]:
        u, v = self.position(tau)
        du = u / self.taus[0] if math.isfinite(self.taus[0]) else 0.0
        dv = v / self.taus[1] if math.isfinite(self.taus[1]) else 0.0
        return (du, dv)

    @classmethod
    def from_ivp(cls, start, velocity, chart_id: str = "UV-entropy") -> "AnalyticGeodesicIG":
        """Relaxation times from an initial condition: tau_Z = Z0 / Zdot0."""
        taus = tuple(
            (s / v) if v != 0.0 else math.inf for s, v in zip(start, velocity)
        )
        return cls(tuple(float(s) for s in start), taus, chart_id)


def analytic_ideal_gas(
    start: Sequence[float], taus: Sequence[float], chart_id: str = "UV-entropy"
) -> AnalyticGeodesicIG:
    """Closed-form geodesic through `start` with relaxation times `taus`."""
    return AnalyticGeodesicIG(
        (float(start[0]), float(start[1])), (float(taus[0]), float(taus[1])), chart_id
    )


# ---------------------------------------------------------------------------
# conserved ratio


def _log_coords(chart_id: str, coords: np.ndarray) -> np.ndarray:
    """Chart coordinates mapped to the scale on which geodesics are linear."""
    if chart_id == "xi-eta-log":
        return np.asarray(coords, dtype=float)
    if chart_id in EXPONENTIAL_CHARTS:
        arr = np.asarray(coords, dtype=float)
        if np.any(arr <= 0.0):
            raise ValueError("nonpositive coordinate on an exponential chart")
        return np.log(arr)
    raise ValueError(f"no exponential structure on chart {chart_id!r}")


def _fit_times(tau: np.ndarray, lam: np.ndarray) -> tuple[float, float]:
    dtau = float(tau[-1] - tau[0])
    out = []
    for j in range(2):
        dz = float(lam[-1, j] - lam[0, j])
        scale = max(1.0, abs(float(lam[0, j])), abs(float(lam[-1, j])))
        if dtau == 0.0 or abs(dz) <= _CONSTANT_COORD_RTOL * scale:
            out.append(math.inf)
        else:
            out.append(dtau / dz)
    return (out[0], out[1])


def fit_relaxation_times(trace: GeodesicTrace) -> tuple[float, float]:
    """Relaxation times from the endpoint log-slopes of a trace.

    A coordinate whose total log-variation is negligible is reported as
    constant via an infinite relaxation time.
    """
    return _fit_times(trace.tau, _log_coords(trace.chart_id, trace.coords))


def conserved_log_ratio(obj, taus: Sequence[float] | None = None) -> np.ndarray:
    """Log form of the conserved ratio Z1^(tau_1)/Z2^(tau_2) per sample.

    Accepts a GeodesicTrace (relaxation times fitted from the endpoints
    unless given) or an AnalyticGeodesicIG evaluated via `taus` as a tau
    grid.  Degenerate constant coordinates reduce the diagnostic to the
    constancy of the remaining coordinate's log.
    """
    if isinstance(obj, AnalyticGeodesicIG):
        grid = np.asarray(taus if taus is not None else np.linspace(0.0, 1.0, 51))
        pos = np.array([obj.position(t) for t in grid])
        lam = _log_coords(obj.chart_id, pos)
        t1, t2 = obj.taus
    else:
        lam = _log_coords(obj.chart_id, obj.coords)
        t1, t2 = taus if taus is not None else fit_relaxation_times(obj)
    return _ratio_series(lam, t1, t2)


def _ratio_series(lam: np.ndarray, t1: float, t2: float) -> np.ndarray:
    fin1, fin2 = math.isfinite(t1), math.isfinite(t2)
    if fin1 and fin2:
        return t1 * lam[:, 0] - t2 * lam[:, 1]
    if fin1 and not fin2:
        return lam[:, 1].copy()
    if fin2 and not fin1:
        return lam[:, 0].copy()
    return np.zeros(len(lam))


def _drift_of(chart_id: str, tau: np.ndarray, coords: np.ndarray) -> float | None:
    try:
        lam = _log_coords(chart_id, coords)
    except ValueError:
        return None
    r = _ratio_series(lam, *_fit_times(tau, lam))
    return float(np.max(np.abs(r - r[0]))) if len(r) else 0.0


# ---------------------------------------------------------------------------
# second-law classification and region geometry


@dataclass(frozen=True)
class ProcessClassification:
    """Entropy balance of a straight quasi-static process in log coordinates."""

    delta_xi: float
    delta_eta: float
    delta_s: float
    verdict: str  # "allowed" | "adiabatic" | "forbidden"


def _require_off_origin(point: Sequence[float]) -> tuple[float, float]:
    x, y = float(point[0]), float(point[1])
    if x == 0.0 and y == 0.0:
        raise ThirdLawError(
            "the minimum-entropy state at the log-chart origin is excluded "
            "from the equilibrium space"
        )
    return x, y


def classify(
    initial: Sequence[float],
    final: Sequence[float],
    cv: float,
    nkb: float = 1.0,
) -> ProcessClassification:
    """Second-law verdict for reaching `final` from `initial` (log chart).

    The entropy change is nkb*(cv*dxi + deta); positive means allowed,
    negative forbidden, zero (within a scaled 1e-12 band) adiabatic.
    Both endpoints must satisfy the minimum-entropy exclusion.
    """
    xi_i, eta_i = _require_off_origin(initial)
    xi_f, eta_f = _require_off_origin(final)
    dxi = xi_f - xi_i
    deta = eta_f - eta_i
    combo = cv * dxi + deta
    ds = nkb * combo
    if abs(combo) <= _ADIABATIC_RTOL * (abs(cv * dxi) + abs(deta) + 1.0):
        verdict = "adiabatic"
    elif combo > 0.0:
        verdict = "allowed"
    else:
        verdict = "forbidden"
    return ProcessClassification(dxi, deta, ds, verdict)


@dataclass(frozen=True)
class AdiabatLine:
    """Intercept form xi/xi_intercept + eta/eta_intercept = 1."""

    xi_intercept: float
    eta_intercept: float

    def residual(self, point: Sequence[float]) -> float:
        return (
            float(point[0]) / self.xi_intercept
            + float(point[1]) / self.eta_intercept
            - 1.0
        )

    def eta_of_xi(self, xi: float) -> float:
        return self.eta_intercept * (1.0 - xi / self.xi_intercept)


def adiabat_line(initial: Sequence[float], cv: float) -> AdiabatLine:
    """The constant-entropy line through `initial` in the log chart."""
    xi_i, eta_i = _require_off_origin(initial)
    return AdiabatLine(xi_i + eta_i / cv, eta_i + cv * xi_i)


@dataclass(frozen=True)
class RegionGeometry:
    """Adiabat boundary data for an initial state.

    `tan_alpha` is the slope magnitude of the adiabat against the eta
    axis, `tan_alpha_prime` against the xi axis; they are reciprocal.
    `area_nc` is the area of the second-law-forbidden triangle.
    """

    initial: tuple[float, float]
    tan_alpha: float
    tan_alpha_prime: float
    adiabat_intercepts: tuple[float, float]
    area_nc: float


def region_geometry(initial: Sequence[float], cv: float) -> RegionGeometry:
    """Adiabatic boundary, intersection angles and forbidden area."""
    xi_i, eta_i = _require_off_origin(initial)
    line = adiabat_line(initial, cv)
    tan_alpha = (xi_i + eta_i / cv) / (eta_i + xi_i * cv)
    tan_alpha_prime = (eta_i + xi_i * cv) / (xi_i + eta_i / cv)
    area = (cv * xi_i + eta_i) ** 2 / (2.0 * cv)
    return RegionGeometry(
        initial=(xi_i, eta_i),
        tan_alpha=tan_alpha,
        tan_alpha_prime=tan_alpha_prime,
        adiabat_intercepts=(line.xi_intercept, line.eta_intercept),
        area_nc=area,
    )


def non_connectivity_area_mc(
    initial: Sequence[float], cv: float, n_samples: int, seed: int
) -> float:
    """Rejection-sampling estimate of the forbidden-triangle area.

    Samples uniformly in the axis-aligned box bounded by the adiabat
    intercepts and counts states whose entropy change from `initial` is
    negative.  Deterministic for a fixed seed.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    xi_i, eta_i = _require_off_origin(initial)
    line = adiabat_line(initial, cv)
    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, line.xi_intercept, n_samples)
    ys = rng.uniform(0.0, line.eta_intercept, n_samples)
    forbidden = cv * (xs - xi_i) + (ys - eta_i) < 0.0
    box = line.xi_intercept * line.eta_intercept
    return float(box * np.count_nonzero(forbidden) / n_samples)


# ---------------------------------------------------------------------------
# process identification


@dataclass(frozen=True)
class ProcessDescriptor:
    """What a pair of relaxation times means as a thermodynamic process.

    `polytropic_index` is n in P*V^n = const (None when V is constant and
    the polytropic form degenerates).  `pv_exponents` = (e1, e2) states
    the conserved quantity (cv*P)^e1 * V^e2 = const when both times are
    finite, else None.
    """

    kind: str  # "adiabatic" | "isothermal" | "isobaric" | "isochoric" | "polytropic" | "static"
    polytropic_index: float | None
    pv_exponents: tuple[float, float] | None


def process_identify(taus: Sequence[float], cv: float, rtol: float = 1e-9) -> ProcessDescriptor:
    """Classify the process family encoded by relaxation times (tau_U, tau_V)."""
    t_u, t_v = float(taus[0]), float(taus[1])
    if t_u == 0.0 or t_v == 0.0:
        raise ValueError(
            "zero relaxation times are singular; constant coordinates are "
            "encoded with math.inf"
        )
    fin_u, fin_v = math.isfinite(t_u), math.isfinite(t_v)
    if not fin_u and not fin_v:
        return ProcessDescriptor("static", None, None)
    if not fin_v:
        # V constant: the polytropic form P*V^n has no finite index.
        return ProcessDescriptor("isochoric", None, None)
    if not fin_u:
        # U (hence T) constant: the n -> 1 limit.
        return ProcessDescriptor("isothermal", 1.0, None)
    exponents = (t_u, t_u - t_v)
    ratio = t_u / t_v
    if abs(ratio + cv) <= rtol * max(1.0, abs(cv)):
        return ProcessDescriptor("adiabatic", 1.0 - t_v / t_u, exponents)
    n = 1.0 - t_v / t_u
    if n == 0.0:
        return ProcessDescriptor("isobaric", 0.0, exponents)
    if n == 1.0:
        return ProcessDescriptor("isothermal", 1.0, exponents)
    return ProcessDescriptor("polytropic", n, exponents)


# ---------------------------------------------------------------------------
# chart-aware entropy and two-point connection


def _log_uv(chart_id: str, x: float, y: float, params: GasParameters) -> tuple[float, float]:
    """(ln U, ln V) of a chart point (exponential and log charts only)."""
    cu, cw = params.nkb * params.cv, params.nkb
    if chart_id == "xi-eta-log":
        return x, y
    if chart_id == "UV-entropy":
        return math.log(x), math.log(y)
    if chart_id == "beta-V":
        return math.log(cu) - math.log(x), math.log(y)
    if chart_id == "U-theta":
        return math.log(x), math.log(cw) - math.log(y)
    if chart_id == "beta-theta":
        return math.log(cu) - math.log(x), math.log(cw) - math.log(y)
    raise ValueError(f"no logarithmic structure on chart {chart_id!r}")


def entropy_values(
    chart_id: str, coords: np.ndarray, params: GasParameters | None = None
) -> np.ndarray:
    """Ideal-gas entropy at each coordinate row of `coords`."""
    p = params or GasParameters()
    arr = np.asarray(coords, dtype=float)
    if chart_id == "SV-energy":
        return arr[:, 0].copy()
    out = np.empty(len(arr))
    for i, (x, y) in enumerate(arr):
        lu, lv = _log_uv(chart_id, float(x), float(y), p)
        out[i] = p.s0 + p.nkb * (
            p.cv * (lu - math.log(p.u0)) + (lv - math.log(p.v0))
        )
    return out


def connect(
    initial: Sequence[float],
    final: Sequence[float],
    metric: MetricField,
    params: GasParameters | None = None,
    n_samples: int = 201,
) -> GeodesicTrace:
    """Geodesic segment between two states of a flat equilibrium chart.

    In the log chart this is the straight segment; on the exponential
    charts its image under the exponential map.  The affine parameter
    runs over [0, 1] at constant log-chart speed and is oriented so the
    entropy is nondecreasing: when the requested direction has negative
    entropy change the endpoints are traversed in reverse order and
    `orientation_flipped` is set on the result.
    """
    p = params or GasParameters()
    chart = metric.chart_id
    if chart != "xi-eta-log" and chart not in EXPONENTIAL_CHARTS:
        raise ValueError(
            "two-point connection is defined on the flat equilibrium charts only"
        )
    a = (float(initial[0]), float(initial[1]))
    b = (float(final[0]), float(final[1]))
    for pt in (a, b):
        if not metric.contains(*pt):
            raise OutOfDomainError(f"{pt} is outside the metric domain")

    lu_a, lv_a = _log_uv(chart, *a, p)
    lu_b, lv_b = _log_uv(chart, *b, p)
    combo = p.cv * (lu_b - lu_a) + (lv_b - lv_a)
    adiabatic = abs(combo) <= _ADIABATIC_RTOL * (
        abs(p.cv * (lu_b - lu_a)) + abs(lv_b - lv_a) + 1.0
    )
    flipped = combo < 0.0 and not adiabatic
    if flipped:
        a, b = b, a

    lam_a = np.asarray(_log_coords(chart, np.asarray([a]))[0])
    lam_b = np.asarray(_log_coords(chart, np.asarray([b]))[0])
    dlam = lam_b - lam_a
    grid = np.linspace(0.0, 1.0, n_samples)
    lam = lam_a + np.outer(grid, dlam)
    if chart == "xi-eta-log":
        coords = lam
        vels = np.tile(dlam, (n_samples, 1))
    else:
        coords = np.exp(lam)
        vels = coords * dlam
    return GeodesicTrace(
        chart_id=chart,
        tau=grid,
        coords=coords,
        velocity=vels,
        arc_length=float(np.hypot(dlam[0], dlam[1])),
        conserved_ratio_drift=_drift_of(chart, grid, coords),
        domain_exit=False,
        orientation_flipped=flipped,
    )
