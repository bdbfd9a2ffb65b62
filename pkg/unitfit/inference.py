"""
End-to-end maximum-likelihood fits and the inference block reported with
them: scaled variance-covariance matrix, standard errors, determinant and
Wald significance.

The reported matrix is the inverse observed information of the total
log-likelihood, vcov_scaled = (-H)^-1, and standard errors are reported as
SE = sqrt(Var / n).
"""
import itertools
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from unitfit.constants.config import (
    Family,
    ALPHA_STARTS,
    SHAPE_STARTS,
    SINGLE_PARAM_STARTS,
    HESSIAN_STEP,
    WALD_THRESHOLD,
)
from unitfit.distributions import FamilySpec, log_likelihood, parameter_count
from unitfit.exceptions import DomainError, HessianError
from unitfit.optim import SimplexConfig, minimize, to_unconstrained, from_unconstrained

logger = logging.getLogger(__name__)


@dataclass
class FitResult:
    """MLE of one family on one dataset, with its inference block."""

    spec: FamilySpec
    log_lik: float
    n_obs: int
    converged: bool
    vcov_scaled: np.ndarray = None
    se: np.ndarray = None
    determinant: float = None
    wald_z: np.ndarray = None
    wald_p: np.ndarray = None
    wald_labels: list = field(default_factory=list)
    iterations: int = 0
    function_evals: int = 0
    inference_error: str = None

    @property
    def family(self):
        return self.spec.family

    @property
    def k(self):
        return len(self.spec.params)

    @property
    def has_inference(self):
        return self.vcov_scaled is not None


def start_points(family):
    """Multi-start grid on the natural parameter scale."""
    family = Family(family)
    if family in (Family.BETA, Family.KUMARASWAMY):
        return [(a, b) for a, b in itertools.product(ALPHA_STARTS, SHAPE_STARTS)]
    if family is Family.GOMBUR1:
        return [(n, a) for n, a in itertools.product(SHAPE_STARTS, ALPHA_STARTS)]
    if family is Family.GOMBUR2:
        # same grid as version 1, expressed through n2 = 2 n1 + 1
        return [(2 * n + 1, a) for n, a in itertools.product(SHAPE_STARTS, ALPHA_STARTS)]
    return [(theta,) for theta in SINGLE_PARAM_STARTS]


def hessian_fd(log_lik_fn, theta_hat, step=HESSIAN_STEP):
    """Symmetric central-difference Hessian with steps h_i = step * max(1, |theta_i|)."""
    theta = np.atleast_1d(np.asarray(theta_hat, dtype=float))
    d = theta.size
    h = step * np.maximum(1.0, np.abs(theta))

    def evaluate(x):
        try:
            value = float(log_lik_fn(x))
        except DomainError as e:
            raise HessianError(f"stencil point {x} is infeasible: {e}") from e
        if not np.isfinite(value):
            raise HessianError(f"stencil point {x} is infeasible")
        return value

    def shifted(i_steps):
        x = theta.copy()
        for i, s in i_steps:
            x[i] += s * h[i]
        return evaluate(x)

    f0 = evaluate(theta)
    hess = np.zeros((d, d))
    for i in range(d):
        fp = shifted([(i, 1)])
        fm = shifted([(i, -1)])
        hess[i, i] = (fp - 2 * f0 + fm) / h[i] ** 2
        for j in range(i):
            fpp = shifted([(i, 1), (j, 1)])
            fpm = shifted([(i, 1), (j, -1)])
            fmp = shifted([(i, -1), (j, 1)])
            fmm = shifted([(i, -1), (j, -1)])
            hess[i, j] = hess[j, i] = (fpp - fpm - fmp + fmm) / (4 * h[i] * h[j])
    return (hess + hess.T) / 2


def wald_test(theta_hat, se):
    """Two-sided Wald test of theta = 0: returns (z, p, label)."""
    if not (np.isfinite(se) and se > 0):
        raise DomainError(f"standard error must be > 0, got {se}")
    z = theta_hat / se
    p = float(min(1.0, 2 * norm.sf(abs(z))))
    label = f"P<{WALD_THRESHOLD:g}" if p < WALD_THRESHOLD else f"{p:.4f}"
    return float(z), p, label


def _negative_log_likelihood(family, y):
    def objective(t):
        return -log_likelihood(FamilySpec(family, from_unconstrained(family, t)), y)
    return objective


def _attach_inference(result, y):
    """Populate the vcov/SE/determinant/Wald block, or record why it is unavailable."""
    family = result.family

    def total_log_lik(theta):
        return log_likelihood(FamilySpec(family, theta), y)

    try:
        hess = hessian_fd(total_log_lik, result.spec.params)
        information = -hess
        np.linalg.cholesky(information)
    except HessianError as e:
        result.inference_error = str(e)
        logger.warning("inference unavailable for %s: %s", family.value, e)
        return result
    except np.linalg.LinAlgError:
        result.inference_error = "Hessian is not negative definite at the optimum"
        logger.warning("inference unavailable for %s: %s", family.value, result.inference_error)
        return result

    vcov_scaled = np.linalg.inv(information)
    vcov_scaled = (vcov_scaled + vcov_scaled.T) / 2
    se = np.sqrt(np.diag(vcov_scaled) / result.n_obs)
    tests = [wald_test(theta, s) for theta, s in zip(result.spec.params, se)]

    result.vcov_scaled = vcov_scaled
    result.se = se
    result.determinant = float(np.linalg.det(vcov_scaled))
    result.wald_z = np.array([t[0] for t in tests])
    result.wald_p = np.array([t[1] for t in tests])
    result.wald_labels = [t[2] for t in tests]
    return result


def fit_mle(family, data, config=None):
    """Multi-start Nelder-Mead MLE of one family, with the full inference block."""
    family = Family(family)
    config = config or SimplexConfig()
    y = np.asarray(getattr(data, "values", data), dtype=float)
    k = parameter_count(family)
    if y.size < k + 2:
        raise DomainError(f"{family.value} needs at least {k + 2} observations, got {y.size}")

    objective = _negative_log_likelihood(family, y)
    best = None
    total_iterations = 0
    total_evals = 0
    for start in start_points(family):
        try:
            outcome = minimize(objective, to_unconstrained(family, start), config)
        except DomainError as e:
            logger.debug("start %s for %s skipped: %s", start, family.value, e)
            continue
        total_iterations += outcome.iterations
        total_evals += outcome.function_evals
        logger.debug(
            "start %s for %s: -LL=%.8f converged=%s",
            start, family.value, outcome.f_min, outcome.converged,
        )
        if best is None or (outcome.converged, -outcome.f_min) > (best.converged, -best.f_min):
            best = outcome

    if best is None:
        raise DomainError(f"{family.value}: the likelihood is not finite at any starting point")
    if not best.converged:
        logger.warning("%s did not converge within the iteration budget", family.value)

    spec = FamilySpec(family, from_unconstrained(family, best.x_min))
    result = FitResult(
        spec=spec,
        log_lik=log_likelihood(spec, y),
        n_obs=int(y.size),
        converged=bool(best.converged),
        iterations=total_iterations,
        function_evals=total_evals,
    )
    return _attach_inference(result, y)
