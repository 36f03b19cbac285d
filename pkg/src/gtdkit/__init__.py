"""Legendre-invariant geometry of thermodynamic equilibrium spaces.

The package builds invariant metrics on the 5D thermodynamic phase
space, projects them onto 2D equilibrium spaces of a fundamental
equation, computes connection and curvature, and integrates and
classifies thermodynamic geodesics (quasi-static processes).  The ideal
gas ships as the worked system: its equilibrium space is flat in every
representation and all of its process geometry is available in closed
form, which the numerical machinery is tested against.
"""

from .errors import (
    GtdError,
    OutOfDomainError,
    SingularMetricError,
    StepUnderflowError,
    ThirdLawError,
)
from .manifold import (
    CHARTS,
    Chart,
    ChartPoint,
    ChristoffelSymbols,
    CurvatureTensor,
    MetricField,
    christoffel,
    curvature,
    euclidean_metric,
    geodesic_rhs,
    register_chart,
    scalar_curvature,
    unit_sphere_metric,
)
from .thermo import (
    FundamentalEquation,
    GasParameters,
    StatePoint,
    check_second_law,
    check_third_law_point,
    ideal_gas_energy,
    ideal_gas_entropy,
    legendre_consistent_massieu_constants,
    massieu_functions,
    state_equations,
)
from .phase import (
    CANONICAL_RECIPE,
    InducedMetric,
    LegendreMap,
    MetricRecipe,
    PhasePoint,
    check_first_law,
    flat_log_metric,
    gibbs_form,
    ideal_gas_equilibrium_metric,
    induce_massieu_metrics,
    induce_metric,
    legendre_map,
    legendre_pushforward_check,
    legendre_transform_point,
    log_diagonal_metric,
    phase_metric,
)
from .geodesics import (
    AdiabatLine,
    AnalyticGeodesicIG,
    GeodesicIVP,
    GeodesicTrace,
    ProcessClassification,
    ProcessDescriptor,
    RegionGeometry,
    adiabat_line,
    analytic_ideal_gas,
    classify,
    connect,
    conserved_log_ratio,
    entropy_values,
    fit_relaxation_times,
    integrate,
    non_connectivity_area_mc,
    process_identify,
    region_geometry,
)

__version__ = "0.1.0"
