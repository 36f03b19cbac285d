import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtdkit import (
    CANONICAL_RECIPE,
    GasParameters,
    MetricRecipe,
    PhasePoint,
    check_first_law,
    curvature,
    gibbs_form,
    ideal_gas_energy,
    ideal_gas_entropy,
    ideal_gas_equilibrium_metric,
    induce_massieu_metrics,
    induce_metric,
    legendre_map,
    legendre_pushforward_check,
    legendre_transform_point,
    log_diagonal_metric,
    massieu_functions,
    phase_metric,
)
from gtdkit.errors import OutOfDomainError

coord = st.floats(min_value=0.5, max_value=2.0)
coords5 = st.tuples(coord, coord, coord, coord, coord)


def random_phase_samples(n=50, seed=0):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.5, 2.0, size=(n, 5))


# ---------------------------------------------------------------------------
# Gibbs form


def test_gibbs_form_energy_rep():
    p = PhasePoint("energy", (5.0, 2.0, 3.0, 4.0, 1.0))
    assert gibbs_form(p) == (1.0, -4.0, 1.0, 0.0, 0.0)


def test_gibbs_form_entropy_rep():
    p = PhasePoint("entropy", (1.0, 2.0, 3.0, 0.5, 0.25))
    assert gibbs_form(p) == (1.0, -0.5, -0.25, 0.0, 0.0)


def test_gibbs_form_vanishing_intensives():
    p = PhasePoint("energy", (5.0, 2.0, 3.0, 0.0, 0.0))
    assert gibbs_form(p) == (1.0, 0.0, 0.0, 0.0, 0.0)


# ---------------------------------------------------------------------------
# phase metric


def test_phase_metric_reduces_to_gibbs_square():
    # With vanishing intensives and a nonnegative exponent the coupling
    # block dies and G is the rank-1 square of the Gibbs form.
    p = PhasePoint("energy", (5.0, 2.0, 3.0, 0.0, 0.0))
    g = phase_metric(p, MetricRecipe(scale=-1.0, k=0))
    expected = np.zeros((5, 5))
    expected[0, 0] = 1.0
    assert np.array_equal(g, expected)
    assert np.linalg.matrix_rank(g) == 1


def test_phase_metric_coupling_slots():
    p = PhasePoint("energy", (0.0, 1.0, 1.0, 1.0, 1.0))
    g = phase_metric(p, CANONICAL_RECIPE)
    assert g[1, 3] == pytest.approx(-0.5)
    assert g[3, 1] == pytest.approx(-0.5)
    assert g[2, 4] == pytest.approx(-0.5)
    assert g[4, 2] == pytest.approx(-0.5)


def test_phase_metric_is_symmetric():
    p = PhasePoint("entropy", (1.0, 2.0, 3.0, 0.5, 0.25))
    g = phase_metric(p, CANONICAL_RECIPE)
    assert np.array_equal(g, g.T)


def test_phase_metric_zero_product_negative_exponent():
    p = PhasePoint("energy", (1.0, 0.0, 1.0, 1.0, 1.0))  # S*T = 0
    with pytest.raises(OutOfDomainError):
        phase_metric(p, CANONICAL_RECIPE)


# ---------------------------------------------------------------------------
# Legendre transformations


def test_transform_point_first_map():
    p = PhasePoint("energy", (5.0, 2.0, 3.0, 4.0, 1.0))
    q = legendre_transform_point(p, 1)
    assert q.coords == (-3.0, 4.0, 3.0, -2.0, 1.0)


def test_transform_point_second_map():
    p = PhasePoint("energy", (5.0, 2.0, 3.0, 4.0, 1.0))
    q = legendre_transform_point(p, 2)
    # (U + PV, S, -P, T, V)
    assert q.coords == (8.0, 2.0, -1.0, 4.0, 3.0)


def test_first_map_is_involution_up_to_pair_signs():
    p = PhasePoint("energy", (5.0, 2.0, 3.0, 4.0, 1.0))
    twice = legendre_transform_point(legendre_transform_point(p, 1), 1)
    u, s, v, t, pr = p.coords
    assert twice.coords == (u, -s, v, -t, pr)


@pytest.mark.parametrize("rep", ["energy", "entropy"])
@pytest.mark.parametrize("which", [0, 1, 2, 3])
@settings(max_examples=25, deadline=None)
@given(c=coords5)
def test_forward_inverse_identity(rep, which, c):
    lmap = legendre_map(rep, which)
    back = lmap.inverse(lmap.forward(c))
    assert np.allclose(back, c, rtol=0, atol=1e-12)


@pytest.mark.parametrize("rep", ["energy", "entropy"])
@pytest.mark.parametrize("which", [1, 2, 3])
def test_jacobian_matches_map_differencing(rep, which):
    lmap = legendre_map(rep, which)
    c = np.array([0.7, 1.3, 0.9, 1.8, 0.6])
    jac = lmap.jacobian(c)
    h = 1e-6
    for j in range(5):
        e = np.zeros(5)
        e[j] = h
        fd = (np.asarray(lmap.forward(c + e)) - np.asarray(lmap.forward(c - e))) / (2 * h)
        assert np.allclose(jac[:, j], fd, rtol=1e-7, atol=1e-9)


@pytest.mark.parametrize("rep", ["energy", "entropy"])
@pytest.mark.parametrize("which", [1, 2, 3])
def test_pushforward_residual_small(rep, which):
    res = legendre_pushforward_check(rep, which, CANONICAL_RECIPE, random_phase_samples())
    assert res < 1e-9


def test_pushforward_identity_map_exact():
    res = legendre_pushforward_check(
        "energy", 0, CANONICAL_RECIPE, random_phase_samples(10)
    )
    assert res == 0.0


def test_pushforward_also_holds_for_other_recipes():
    # Invariance relies only on the exponent being odd, not on its value.
    for recipe in (MetricRecipe(scale=2.5, k=1), MetricRecipe(scale=-0.5, k=-2)):
        res = legendre_pushforward_check("entropy", 3, recipe, random_phase_samples(20, 1))
        assert res < 1e-9


# ---------------------------------------------------------------------------
# induced equilibrium metrics


def test_induced_entropy_metric_canonical_values():
    metric = induce_metric(ideal_gas_entropy())
    g = np.asarray(metric.components(2.0, 4.0))
    assert np.allclose(g, np.diag([0.25, 0.0625]), atol=1e-15)


@pytest.mark.parametrize("scale,k", [(-1.0, -1), (-2.0, 1), (0.5, 0), (3.0, -2)])
def test_induced_entropy_metric_matches_general_closed_form(scale, k):
    params = GasParameters(nkb=2.0, cv=1.5)
    metric = induce_metric(ideal_gas_entropy(params), MetricRecipe(scale=scale, k=k))
    power = 2 * k + 2
    for u, v in [(0.5, 3.0), (2.0, 0.25)]:
        g = np.asarray(metric.components(u, v))
        g11 = -(params.nkb**power) * scale * params.cv**power / u**2
        g22 = -(params.nkb**power) * scale / v**2
        assert np.allclose(g, np.diag([g11, g22]), rtol=1e-13)


def test_induced_energy_metric_closed_form():
    # Frozen from a symbolic derivation of the induction on U(S, V):
    #   g_SS = -1/(S cv nkb), g_SV = (nkb - S)/(2 S V cv nkb),
    #   g_VV = (cv + 1)/(cv V^2)
    metric = induce_metric(ideal_gas_energy())
    s, v = 2.0, 3.0
    g = np.asarray(metric.components(s, v))
    assert g[0, 0] == pytest.approx(-1.0 / 3.0, rel=1e-13)
    assert g[0, 1] == pytest.approx(-1.0 / 18.0, rel=1e-13)
    assert g[1, 1] == pytest.approx(2.5 / (9.0 * 1.5), rel=1e-13)
    assert g[0, 1] != 0.0  # genuinely non-diagonal


def test_induced_energy_metric_partials_match_differencing():
    metric = induce_metric(ideal_gas_energy())
    s, v = 1.7, 0.9
    h = 1e-6
    got = metric.partials(s, v)
    for axis in range(2):
        dp = (s + h, v) if axis == 0 else (s, v + h)
        dm = (s - h, v) if axis == 0 else (s, v - h)
        fd = (np.asarray(metric.components(*dp)) - np.asarray(metric.components(*dm))) / (2 * h)
        packed = (fd[0, 0], fd[0, 1], fd[1, 1])
        assert np.allclose(got[axis], packed, rtol=1e-6, atol=1e-9)


def test_induced_massieu_metrics_closed_forms():
    g1, g2, g3 = induce_massieu_metrics()
    assert np.allclose(np.asarray(g1.components(2.0, 1.0)), np.diag([0.25, 1.0]))
    assert np.allclose(np.asarray(g3.components(1.0, 1.0)), np.eye(2))
    assert np.allclose(np.asarray(g2.components(0.5, 4.0)), np.diag([4.0, 0.0625]))


def test_induced_metrics_match_log_diagonal_closed_form():
    pairs = [
        (induce_metric(ideal_gas_entropy()), log_diagonal_metric("UV-entropy")),
    ]
    for induced, closed in zip(
        induce_massieu_metrics(), [log_diagonal_metric(c) for c in ("beta-V", "U-theta", "beta-theta")]
    ):
        pairs.append((induced, closed))
    axis = np.geomspace(0.1, 10.0, 7)
    for induced, closed in pairs:
        for x in axis:
            for y in axis:
                gi = np.asarray(induced.components(x, y))
                gc = np.asarray(closed.components(x, y))
                assert np.max(np.abs(gi - gc)) < 1e-10


def test_all_representations_are_flat():
    metrics = [
        induce_metric(ideal_gas_entropy()),
        induce_metric(ideal_gas_energy()),
        *induce_massieu_metrics(),
    ]
    for metric in metrics:
        for point in [(0.5, 0.5), (2.0, 7.0), (9.0, 0.3)]:
            assert curvature(metric, point).max_abs_riemann < 1e-8


def test_induced_metric_domain_excludes_zero_products():
    metric = induce_metric(ideal_gas_energy())  # S * U_S vanishes at S = 0
    assert not metric.contains(0.0, 1.0)
    with pytest.raises(OutOfDomainError):
        metric.components(0.0, 1.0)


def test_closed_form_equilibrium_metric_equals_induced():
    closed = ideal_gas_equilibrium_metric()
    induced = induce_metric(ideal_gas_entropy())
    for u, v in [(0.1, 10.0), (3.0, 0.2)]:
        assert np.allclose(
            np.asarray(closed.components(u, v)),
            np.asarray(induced.components(u, v)),
            atol=1e-15,
        )


# ---------------------------------------------------------------------------
# first law


def test_first_law_residual_vanishes():
    rng = np.random.default_rng(3)
    samples = rng.uniform(0.1, 10.0, size=(100, 2))
    assert check_first_law(ideal_gas_entropy(), samples) < 1e-12
    s_samples = np.column_stack([rng.uniform(-3, 3, 100), rng.uniform(0.1, 10, 100)])
    assert check_first_law(ideal_gas_energy(), s_samples) < 1e-12
    for fe in massieu_functions():
        assert check_first_law(fe, samples) < 1e-12


def test_first_law_detects_corrupted_embedding():
    fe = ideal_gas_entropy()

    def corrupted(x, y):
        f1, f2 = fe.d1(x, y)
        return (f1 + 1e-3, f2)

    res = check_first_law(fe, [(1.0, 1.0), (2.0, 0.5)], intensives=corrupted)
    assert res == pytest.approx(1e-3, rel=1e-9)


def test_first_law_detects_corrupted_energy_embedding():
    fe = ideal_gas_energy()

    def corrupted(x, y):
        f1, f2 = fe.d1(x, y)
        return (f1, -f2 + 2e-4)  # (T, P) with P off by 2e-4

    res = check_first_law(fe, [(0.3, 1.2)], intensives=corrupted)
    assert res == pytest.approx(2e-4, rel=1e-9)


# ---------------------------------------------------------------------------
# validation


def test_recipe_validation():
    with pytest.raises(ValueError):
        MetricRecipe(scale=0.0, k=-1)
    with pytest.raises(ValueError):
        MetricRecipe(scale=-1.0, k=0.5)  # type: ignore[arg-type]


def test_phase_point_validation():
    with pytest.raises(ValueError):
        PhasePoint("energy", (1.0, 2.0, 3.0))
    with pytest.raises(ValueError):
        PhasePoint("massieu1", (1.0, 2.0, 3.0, 4.0, 5.0))
