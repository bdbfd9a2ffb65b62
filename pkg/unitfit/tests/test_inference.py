import numpy as np
import pytest

from unitfit.constants.config import Family, FAMILY_ORDER
from unitfit.data import load_embedded
from unitfit.distributions import score
from unitfit.exceptions import DomainError, HessianError
from unitfit.inference import fit_mle, hessian_fd, start_points, wald_test


def test_start_grids():
    assert len(start_points(Family.BETA)) == 9
    assert len(start_points(Family.MBUR)) == 4
    assert start_points(Family.GOMBUR2) == [(2 * n + 1, a) for n, a in start_points(Family.GOMBUR1)]


def test_hessian_of_quadratic():
    def quadratic(theta):
        x, y = theta
        return -(3 * x ** 2 + 2 * x * y + 5 * y ** 2)

    np.testing.assert_allclose(hessian_fd(quadratic, [0.3, -0.7]), [[-6, -2], [-2, -10]], atol=1e-5)


def test_hessian_infeasible_stencil():
    def boundary(theta):
        if theta[0] <= 0:
            return -np.inf
        return np.log(theta[0])

    with pytest.raises(HessianError):
        hessian_fd(boundary, [1e-6])


def test_wald_labels():
    z, p, label = wald_test(2.3519, 0.0272)
    assert z == pytest.approx(86.47, rel=1e-3)
    assert label == "P<0.001"
    z, p, label = wald_test(0.1, 0.1)
    assert p == pytest.approx(0.3173, abs=1e-4)
    assert label == "0.3173"
    with pytest.raises(DomainError):
        wald_test(1.0, 0.0)


def test_too_few_observations():
    with pytest.raises(DomainError):
        fit_mle(Family.GOMBUR1, [0.2, 0.4, 0.6])
    assert fit_mle(Family.MBUR, [0.2, 0.4, 0.6]).n_obs == 3


def test_gombur1_dwelling(dwelling_gombur1):
    fit = dwelling_gombur1.fit
    n_hat, alpha_hat = fit.spec.params
    assert fit.converged
    assert n_hat == pytest.approx(5.7248, abs=0.01)
    assert alpha_hat == pytest.approx(2.4988, abs=0.005)
    assert fit.log_lik == pytest.approx(81.0731, abs=0.005)
    assert fit.determinant == pytest.approx(0.0218, rel=0.15)
    np.testing.assert_allclose(fit.vcov_scaled, [[2.7974, 0.0255], [0.0255, 0.008]], rtol=0.02, atol=5e-4)
    np.testing.assert_allclose(fit.se, [0.3004, 0.0161], rtol=0.02)
    assert fit.determinant == pytest.approx(np.linalg.det(fit.vcov_scaled))
    np.testing.assert_allclose(fit.vcov_scaled, fit.vcov_scaled.T)
    assert fit.wald_labels == ["P<0.001", "P<0.001"]


def test_competitors_dwelling(dwelling_table):
    beta = dwelling_table.block(Family.BETA).fit
    assert beta.log_lik == pytest.approx(78.7767, abs=0.01)
    np.testing.assert_allclose(beta.spec.params, (0.5086, 14.036), rtol=0.01)
    assert dwelling_table.block(Family.KUMARASWAMY).fit.log_lik == pytest.approx(79.9489, abs=0.01)

    mbur = dwelling_table.block(Family.MBUR).fit
    assert mbur.spec.params[0] == pytest.approx(2.3519, abs=0.002)
    assert mbur.se[0] == pytest.approx(0.0272, rel=0.05)
    assert mbur.vcov_scaled[0][0] == pytest.approx(0.023, rel=0.05)
    assert mbur.se[0] == pytest.approx(np.sqrt(mbur.vcov_scaled[0][0] / 31))
    assert mbur.determinant == pytest.approx(mbur.vcov_scaled[0][0])


def test_gombur1_covid_canada(canada_gombur1):
    assert canada_gombur1.spec.params[1] == pytest.approx(1.4623, abs=0.005)
    assert canada_gombur1.log_lik == pytest.approx(85.783, abs=0.01)


def test_score_vanishes_at_mle(dwelling_table):
    for family in (Family.GOMBUR1, Family.GOMBUR2):
        fit = dwelling_table.block(family).fit
        gradient = np.asarray(score(fit.spec, dwelling_table.dataset))
        assert np.linalg.norm(gradient) <= 1e-3 * (1 + abs(fit.log_lik))


@pytest.mark.parametrize("dataset_id", range(1, 15))
def test_gombur_versions_agree(dataset_id):
    data = load_embedded(dataset_id)
    v1 = fit_mle(Family.GOMBUR1, data)
    v2 = fit_mle(Family.GOMBUR2, data)
    (n1, a1), (n2, a2) = v1.spec.params, v2.spec.params
    assert n2 == pytest.approx(2 * n1 + 1, abs=1e-3)
    assert a2 == pytest.approx(a1, abs=1e-3)
    assert v2.log_lik == pytest.approx(v1.log_lik, abs=1e-6)
    assert v1.has_inference and v2.has_inference
    assert v2.se[0] == pytest.approx(2 * v1.se[0], rel=0.01)
    assert v2.vcov_scaled[0][0] == pytest.approx(4 * v1.vcov_scaled[0][0], rel=0.02)
    assert v2.vcov_scaled[1][1] == pytest.approx(v1.vcov_scaled[1][1], rel=0.02)


def test_every_family_fits_dwelling(dwelling_table):
    assert [b.family for b in dwelling_table.blocks] == FAMILY_ORDER
    assert all(not b.failed and b.fit.converged for b in dwelling_table.blocks)
