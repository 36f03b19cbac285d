"""Ideal-gas fundamental equations and thermodynamic-law checks.

The gas is described in five interchangeable representations, each a
potential over its own pair of natural coordinates:

    entropy   S(U, V)      = s0 + nkb*cv*ln(U/u0) + nkb*ln(V/v0)
    energy    U(S, V)      = u0 * exp((S - s0)/(nkb*cv)) * (V/v0)^(-1/cv)
    massieu1  S1(beta, V)  = s01 - cv*nkb*ln(beta) + nkb*ln(V)
    massieu2  S2(U, theta) = s02 + cv*nkb*ln(U)    - nkb*ln(theta)
    massieu3  S3(beta, th) = s03 - cv*nkb*ln(beta) - nkb*ln(theta)

with beta = 1/T and theta = P/T.  The energy form is the exact inversion
of the entropy form, which forces the exponent -1/cv on V.  Analytic
partials are supplied to third order so induced metrics can be
differentiated without numerical noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

from .errors import OutOfDomainError

__all__ = [
    "GasParameters",
    "FundamentalEquation",
    "StatePoint",
    "REPRESENTATION_CHARTS",
    "ideal_gas_entropy",
    "ideal_gas_energy",
    "massieu_functions",
    "legendre_consistent_massieu_constants",
    "state_equations",
    "check_second_law",
    "SecondLawReport",
    "SecondLawResult",
    "check_third_law_point",
    "to_extensive_chart",
    "from_extensive_chart",
    "tangent_to_extensive",
    "tangent_from_extensive",
]

REPRESENTATION_CHARTS = {
    "entropy": "UV-entropy",
    "energy": "SV-energy",
    "massieu1": "beta-V",
    "massieu2": "U-theta",
    "massieu3": "beta-theta",
}

@dataclass(frozen=True)
class GasParameters:
    """Dimensionless ideal-gas constants.

    nkb is the product N*k_B; cv the dimensionless heat capacity at
    constant volume (cv = l/2 for l degrees of freedom per particle,
    informational only).  The defaults describe a monoatomic gas with all
    reference constants normalized away.
    """

    nkb: float = 1.0
    cv: float = 1.5
    s0: float = 0.0
    u0: float = 1.0
    v0: float = 1.0
    s01: float = 0.0
    s02: float = 0.0
    s03: float = 0.0

    def __post_init__(self) -> None:
        for name in ("nkb", "cv", "u0", "v0"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class FundamentalEquation:
    """A thermodynamic potential with analytic partials and a domain.

    d1 returns (f_x, f_y); d2 returns (f_xx, f_xy, f_yy); d3 returns
    (f_xxx, f_xxy, f_xyy, f_yyy).  `representation` selects the sign
    conventions used by the law checks, `chart_id` the coordinate chart
    the potential lives on.
    """

    representation: str
    chart_id: str
    value: Callable[[float, float], float]
    d1: Callable[[float, float], tuple[float, float]]
    d2: Callable[[float, float], tuple[float, float, float]]
    d3: Callable[[float, float], tuple[float, float, float, float]]
    domain: Callable[[float, float], bool]
    params: GasParameters | None = None


@dataclass(frozen=True)
class StatePoint:
    """Coordinates plus the conjugate intensives derived from the potential."""

    representation: str
    coords: tuple[float, float]
    intensives: tuple[float, float]

    @property
    def intensive_names(self) -> tuple[str, str]:
        return ("beta", "theta") if self.representation == "entropy" else ("T", "P")


def ideal_gas_entropy(params: GasParameters | None = None) -> FundamentalEquation:
    """Entropy-representation fundamental equation S(U, V) of the ideal gas."""
    p = params or GasParameters()
    cu, cw = p.nkb * p.cv, p.nkb

    def value(u: float, v: float) -> float:
        return p.s0 + cu * math.log(u / p.u0) + cw * math.log(v / p.v0)

    return FundamentalEquation(
        representation="entropy",
        chart_id="UV-entropy",
        value=value,
        d1=lambda u, v: (cu / u, cw / v),
        d2=lambda u, v: (-cu / (u * u), 0.0, -cw / (v * v)),
        d3=lambda u, v: (2.0 * cu / u**3, 0.0, 0.0, 2.0 * cw / v**3),
        domain=lambda u, v: u > 0.0 and v > 0.0,
        params=p,
    )


def ideal_gas_energy(params: GasParameters | None = None) -> FundamentalEquation:
    """Energy-representation U(S, V), the exact inversion of the entropy form.

    Inverting the entropy equation forces U proportional to V^(-1/cv);
    the reference constants are absorbed so that the round trip
    S -> U -> S is exact.
    """
    p = params or GasParameters()
    a = 1.0 / (p.nkb * p.cv)
    b = 1.0 / p.cv

    def u_of(s: float, v: float) -> float:
        return p.u0 * math.exp(a * (s - p.s0)) * (v / p.v0) ** (-b)

    def d1(s: float, v: float):
        u = u_of(s, v)
        return (a * u, -b * u / v)

    def d2(s: float, v: float):
        u = u_of(s, v)
        return (a * a * u, -a * b * u / v, b * (b + 1.0) * u / (v * v))

    def d3(s: float, v: float):
        u = u_of(s, v)
        return (
            a**3 * u,
            -a * a * b * u / v,
            a * b * (b + 1.0) * u / (v * v),
            -b * (b + 1.0) * (b + 2.0) * u / v**3,
        )

    return FundamentalEquation(
        representation="energy",
        chart_id="SV-energy",
        value=u_of,
        d1=d1,
        d2=d2,
        d3=d3,
        domain=lambda s, v: v > 0.0,
        params=p,
    )


def _log_potential(
    rep: str,
    chart_id: str,
    const: float,
    c1: float,
    c2: float,
    params: GasParameters,
) -> FundamentalEquation:
    """Potential const + c1*ln(x) + c2*ln(y) on an all-positive chart."""
    return FundamentalEquation(
        representation=rep,
        chart_id=chart_id,
        value=lambda x, y: const + c1 * math.log(x) + c2 * math.log(y),
        d1=lambda x, y: (c1 / x, c2 / y),
        d2=lambda x, y: (-c1 / (x * x), 0.0, -c2 / (y * y)),
        d3=lambda x, y: (2.0 * c1 / x**3, 0.0, 0.0, 2.0 * c2 / y**3),
        domain=_pos_pair,
        params=params,
    )


def _pos_pair(x: float, y: float) -> bool:
    return x > 0.0 and y > 0.0


def massieu_functions(
    params: GasParameters | None = None,
) -> tuple[FundamentalEquation, FundamentalEquation, FundamentalEquation]:
    """The three Massieu potentials S1(beta,V), S2(U,theta), S3(beta,theta)."""
    p = params or GasParameters()
    cu, cw = p.nkb * p.cv, p.nkb
    return (
        _log_potential("massieu1", "beta-V", p.s01, -cu, cw, p),
        _log_potential("massieu2", "U-theta", p.s02, cu, -cw, p),
        _log_potential("massieu3", "beta-theta", p.s03, -cu, -cw, p),
    )


def legendre_consistent_massieu_constants(params: GasParameters) -> GasParameters:
    """Reference constants that make the Massieu potentials exactly equal to
    S - U*beta, S - V*theta and S - U*beta - V*theta on the gas.

    The shipped default constants are zero because only derivatives enter
    metrics and geodesics; this helper pins the additive freedom when the
    pointwise identities themselves are wanted.
    """
    cu, cw = params.nkb * params.cv, params.nkb
    d1 = cu * (math.log(cu / params.u0) - 1.0)
    d2 = cw * (math.log(cw / params.v0) - 1.0)
    return replace(
        params,
        s01=params.s0 + d1 - cw * math.log(params.v0),
        s02=params.s0 + d2 - cu * math.log(params.u0),
        s03=params.s0 + d1 + d2,
    )


def state_equations(fe: FundamentalEquation, coords: Sequence[float]) -> StatePoint:
    """Conjugate intensives at `coords` from the first partials.

    Entropy representation: (beta, theta) = (dS/dU, dS/dV).
    Energy representation:  (T, P) = (dU/dS, -dU/dV).
    """
    x, y = float(coords[0]), float(coords[1])
    if not fe.domain(x, y):
        raise OutOfDomainError(f"({x}, {y}) is outside the {fe.representation} domain")
    f1, f2 = fe.d1(x, y)
    if fe.representation == "energy":
        return StatePoint("energy", (x, y), (f1, -f2))
    if fe.representation == "entropy":
        return StatePoint("entropy", (x, y), (f1, f2))
    raise ValueError(
        "state equations are defined for the entropy and energy representations; "
        "use the chart conversion helpers for Massieu coordinates"
    )


# ---------------------------------------------------------------------------
# second and third law


@dataclass(frozen=True)
class SecondLawResult:
    coords: tuple[float, float]
    eigenvalues: tuple[float, float]
    satisfied: bool


@dataclass(frozen=True)
class SecondLawReport:
    representation: str
    results: tuple[SecondLawResult, ...]

    @property
    def all_satisfied(self) -> bool:
        return all(r.satisfied for r in self.results)

    @property
    def worst_eigenvalue(self) -> float:
        """Largest second-law violation across the sample (0 when clean)."""
        worst = 0.0
        for r in self.results:
            lo, hi = r.eigenvalues
            if self.representation == "energy":
                worst = max(worst, -lo)
            else:
                worst = max(worst, hi)
        return worst


def check_second_law(
    fe: FundamentalEquation, samples: Iterable[Sequence[float]], tol: float = 1e-12
) -> SecondLawReport:
    """Eigenvalue test of the potential Hessian at each sample point.

    Entropy-type potentials must have a negative-semidefinite Hessian,
    the energy potential a positive-semidefinite one.  Semidefiniteness
    is decided on the critical eigenvalue with absolute tolerance `tol`.
    """
    if fe.representation not in ("entropy", "energy"):
        raise ValueError(
            "the Hessian concavity condition applies to the entropy and energy "
            "representations only"
        )
    out = []
    for coords in samples:
        x, y = float(coords[0]), float(coords[1])
        if not fe.domain(x, y):
            raise OutOfDomainError(f"sample ({x}, {y}) is outside the domain")
        h11, h12, h22 = fe.d2(x, y)
        tr = h11 + h22
        disc = math.sqrt(max((h11 - h22) ** 2 + 4.0 * h12 * h12, 0.0))
        lo, hi = 0.5 * (tr - disc), 0.5 * (tr + disc)
        scale = tol * max(1.0, abs(lo), abs(hi))
        ok = lo >= -scale if fe.representation == "energy" else hi <= scale
        out.append(SecondLawResult((x, y), (lo, hi), ok))
    return SecondLawReport(fe.representation, tuple(out))


def check_third_law_point(params: GasParameters, point: Sequence[float]) -> bool:
    """True when a log-chart state is admissible; the minimum-entropy state
    at the origin is excluded."""
    xi, eta = float(point[0]), float(point[1])
    return not (xi == 0.0 and eta == 0.0)


# ---------------------------------------------------------------------------
# coordinate maps between representation charts


def to_extensive_chart(rep: str, coords: Sequence[float], params: GasParameters) -> tuple[float, float]:
    """Map a representation chart point to (U, V)."""
    x, y = float(coords[0]), float(coords[1])
    cu, cw = params.nkb * params.cv, params.nkb
    if rep == "entropy":
        return x, y
    if rep == "energy":
        return ideal_gas_energy(params).value(x, y), y
    if rep == "massieu1":
        return cu / x, y
    if rep == "massieu2":
        return x, cw / y
    if rep == "massieu3":
        return cu / x, cw / y
    raise ValueError(f"unknown representation {rep!r}")


def from_extensive_chart(rep: str, uv: Sequence[float], params: GasParameters) -> tuple[float, float]:
    """Map (U, V) to a representation chart point."""
    u, v = float(uv[0]), float(uv[1])
    cu, cw = params.nkb * params.cv, params.nkb
    if rep == "entropy":
        return u, v
    if rep == "energy":
        return ideal_gas_entropy(params).value(u, v), v
    if rep == "massieu1":
        return cu / u, v
    if rep == "massieu2":
        return u, cw / v
    if rep == "massieu3":
        return cu / u, cw / v
    raise ValueError(f"unknown representation {rep!r}")


def tangent_to_extensive(
    rep: str, coords: Sequence[float], velocity: Sequence[float], params: GasParameters
) -> tuple[float, float]:
    """Push a tangent vector at `coords` forward to the (U, V) chart."""
    x, y = float(coords[0]), float(coords[1])
    vx, vy = float(velocity[0]), float(velocity[1])
    cu, cw = params.nkb * params.cv, params.nkb
    if rep == "entropy":
        return vx, vy
    if rep == "energy":
        u = ideal_gas_energy(params).value(x, y)
        a, b = 1.0 / cu, 1.0 / params.cv
        return a * u * vx - b * u / y * vy, vy
    if rep == "massieu1":
        return -cu / (x * x) * vx, vy
    if rep == "massieu2":
        return vx, -cw / (y * y) * vy
    if rep == "massieu3":
        return -cu / (x * x) * vx, -cw / (y * y) * vy
    raise ValueError(f"unknown representation {rep!r}")


def tangent_from_extensive(
    rep: str, uv: Sequence[float], velocity_uv: Sequence[float], params: GasParameters
) -> tuple[float, float]:
    """Pull a (U, V)-chart tangent vector back to a representation chart."""
    u, v = float(uv[0]), float(uv[1])
    vu, vv = float(velocity_uv[0]), float(velocity_uv[1])
    cu, cw = params.nkb * params.cv, params.nkb
    if rep == "entropy":
        return vu, vv
    if rep == "energy":
        return cu / u * vu + cw / v * vv, vv
    if rep == "massieu1":
        return -cu / (u * u) * vu, vv
    if rep == "massieu2":
        return vu, -cw / (v * v) * vv
    if rep == "massieu3":
        return -cu / (u * u) * vu, -cw / (v * v) * vv
    raise ValueError(f"unknown representation {rep!r}")
