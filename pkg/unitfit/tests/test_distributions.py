import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from unitfit.constants.config import Family
from unitfit.distributions import (
    FamilySpec,
    cdf,
    gombur1_from_gombur2,
    gombur2_from_gombur1,
    log_likelihood,
    logpdf,
    parameter_count,
    pdf,
    quantile,
    score,
    score_gombur1,
    score_gombur2,
)
from unitfit.exceptions import DomainError

SPECS = [
    FamilySpec(Family.BETA, (2.0, 3.0)),
    FamilySpec(Family.BETA, (0.8, 1.7)),
    FamilySpec(Family.KUMARASWAMY, (2.0, 5.0)),
    FamilySpec(Family.KUMARASWAMY, (1.3, 0.9)),
    FamilySpec(Family.TOPP_LEONE, (1.5,)),
    FamilySpec(Family.TOPP_LEONE, (0.7,)),
    FamilySpec(Family.UNIT_LINDLEY, (2.0,)),
    FamilySpec(Family.UNIT_LINDLEY, (0.6,)),
    FamilySpec(Family.MBUR, (0.8,)),
    FamilySpec(Family.MBUR, (2.35,)),
    FamilySpec(Family.GOMBUR1, (2.0, 1.3)),
    FamilySpec(Family.GOMBUR1, (5.7, 2.5)),
    FamilySpec(Family.GOMBUR2, (3.0, 0.9)),
    FamilySpec(Family.GOMBUR2, (12.4, 2.5)),
]
IDS = [f"{s.family.value}{s.params}" for s in SPECS]


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_density_integrates_to_one(spec):
    total, _ = integrate.quad(lambda y: pdf(spec, y), 0, 1, limit=200)
    assert total == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_cdf_is_integral_of_density(spec):
    for x in (0.05, 0.3, 0.5, 0.9):
        area, _ = integrate.quad(lambda y: pdf(spec, y), 0, x, limit=200)
        assert cdf(spec, x) == pytest.approx(area, abs=1e-6)


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_cdf_boundaries_and_monotonicity(spec):
    assert cdf(spec, 0.0) == 0.0
    assert cdf(spec, 1.0) == 1.0
    values = cdf(spec, np.linspace(0, 1, 401))
    assert np.all(np.diff(values) >= 0)
    assert np.all((values >= 0) & (values <= 1))


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_quantile_inverts_cdf(spec):
    probs = np.array([1e-3, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999])
    np.testing.assert_allclose(cdf(spec, quantile(spec, probs)), probs, atol=1e-8)


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_scalar_in_scalar_out(spec):
    assert isinstance(pdf(spec, 0.3), float)
    assert isinstance(cdf(spec, 0.3), float)
    assert isinstance(quantile(spec, 0.3), float)
    assert logpdf(spec, 0.3) == pytest.approx(np.log(pdf(spec, 0.3)))


@given(alpha=st.floats(min_value=0.3, max_value=5.0), y=st.floats(min_value=1e-4, max_value=1 - 1e-4))
def test_gombur1_at_n_one_is_mbur(alpha, y):
    gombur = FamilySpec(Family.GOMBUR1, (1.0, alpha))
    mbur = FamilySpec(Family.MBUR, (alpha,))
    assert logpdf(gombur, y) == pytest.approx(logpdf(mbur, y), rel=1e-10, abs=1e-10)
    assert cdf(gombur, y) == pytest.approx(cdf(mbur, y), abs=1e-12)


@given(
    m=st.floats(min_value=0.01, max_value=30.0),
    alpha=st.floats(min_value=0.3, max_value=5.0),
    y=st.floats(min_value=1e-4, max_value=1 - 1e-4),
)
def test_gombur2_reparameterizes_gombur1(m, alpha, y):
    v1 = FamilySpec(Family.GOMBUR1, (m, alpha))
    v2 = FamilySpec(Family.GOMBUR2, (gombur2_from_gombur1(m), alpha))
    assert logpdf(v2, y) == pytest.approx(logpdf(v1, y), rel=1e-9, abs=1e-9)
    assert cdf(v2, y) == pytest.approx(cdf(v1, y), abs=1e-10)


def test_shape_maps_are_inverse():
    assert gombur2_from_gombur1(5.7248) == pytest.approx(12.4496)
    assert gombur1_from_gombur2(gombur2_from_gombur1(0.37)) == pytest.approx(0.37)


def test_gombur_boundary_shapes_are_valid():
    # n = 0 (version 1) and n = 1 (version 2) are inside the parameter domain
    assert np.isfinite(logpdf(FamilySpec(Family.GOMBUR1, (0.0, 1.2)), 0.4))
    assert np.isfinite(logpdf(FamilySpec(Family.GOMBUR2, (1.0, 1.2)), 0.4))


@pytest.mark.parametrize("family, params", [
    (Family.BETA, (0.0, 1.0)),
    (Family.KUMARASWAMY, (1.0, -2.0)),
    (Family.TOPP_LEONE, (1.0, 2.0)),
    (Family.MBUR, (np.nan,)),
    (Family.GOMBUR1, (-0.1, 1.0)),
    (Family.GOMBUR2, (0.99, 1.0)),
])
def test_invalid_parameters_rejected(family, params):
    with pytest.raises(DomainError):
        FamilySpec(family, params)


def test_evaluation_domain():
    spec = FamilySpec(Family.BETA, (2.0, 2.0))
    with pytest.raises(DomainError):
        pdf(spec, 0.0)
    with pytest.raises(DomainError):
        cdf(spec, 1.2)
    with pytest.raises(DomainError):
        quantile(spec, 1.0)
    with pytest.raises(DomainError):
        log_likelihood(spec, [0.2, 1.0])


def test_parameter_count():
    assert [parameter_count(f) for f in Family] == [2, 2, 1, 1, 1, 2, 2]


def test_log_likelihood_is_sum_of_log_densities(dwelling):
    spec = FamilySpec(Family.KUMARASWAMY, (0.7, 9.0))
    assert log_likelihood(spec, dwelling) == pytest.approx(np.sum(logpdf(spec, dwelling.array)))


def _fd_gradient(spec, data):
    theta = np.array(spec.params)
    grad = []
    for i in range(theta.size):
        h = 1e-6 * max(1.0, abs(theta[i]))
        up, down = theta.copy(), theta.copy()
        up[i] += h
        down[i] -= h
        grad.append(
            (log_likelihood(FamilySpec(spec.family, up), data)
             - log_likelihood(FamilySpec(spec.family, down), data)) / (2 * h)
        )
    return np.array(grad)


@given(n=st.floats(min_value=0.1, max_value=20.0), alpha=st.floats(min_value=0.4, max_value=4.0))
@settings(max_examples=100, deadline=None)
def test_gombur1_score_matches_finite_differences(n, alpha, covid_canada):
    spec = FamilySpec(Family.GOMBUR1, (n, alpha))
    scale = 1 + abs(log_likelihood(spec, covid_canada))
    np.testing.assert_allclose(
        score_gombur1(n, alpha, covid_canada), _fd_gradient(spec, covid_canada),
        rtol=1e-4, atol=1e-6 * scale,
    )


@given(n=st.floats(min_value=1.2, max_value=40.0), alpha=st.floats(min_value=0.4, max_value=4.0))
@settings(max_examples=100, deadline=None)
def test_gombur2_score_matches_finite_differences(n, alpha, dwelling):
    spec = FamilySpec(Family.GOMBUR2, (n, alpha))
    scale = 1 + abs(log_likelihood(spec, dwelling))
    np.testing.assert_allclose(
        score_gombur2(n, alpha, dwelling), _fd_gradient(spec, dwelling),
        rtol=1e-4, atol=1e-6 * scale,
    )


def test_score_dispatch_and_domain(dwelling):
    spec = FamilySpec(Family.GOMBUR1, (2.0, 1.5))
    assert score(spec, dwelling) == score_gombur1(2.0, 1.5, dwelling)
    with pytest.raises(DomainError):
        score(FamilySpec(Family.BETA, (1.0, 1.0)), dwelling)
    with pytest.raises(DomainError):
        score_gombur2(1.0, 1.5, dwelling)
