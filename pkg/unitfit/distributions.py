"""
The seven unit-interval families: densities, CDFs, quantiles, log-likelihoods
and the analytic GOMBUR score functions.

All evaluation happens in log space; normalizing constants are built from
log-gamma values and never exponentiated on their own.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from unitfit.constants.config import (
    Family,
    PARAM_NAMES,
    INCLUSIVE_LOWER_BOUNDS,
)
from unitfit.exceptions import DomainError
from unitfit import specfun

logger = logging.getLogger(__name__)

LN2 = np.log(2.0)
LN6 = np.log(6.0)


@dataclass(frozen=True)
class FamilySpec:
    """One family together with concrete parameter values (ParamVector)."""

    family: Family
    params: tuple

    def __post_init__(self):
        family = Family(self.family)
        params = tuple(float(p) for p in np.atleast_1d(self.params))
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)
        validate_params(family, params)

    @property
    def param_names(self):
        return PARAM_NAMES[self.family]

    def as_dict(self):
        """Parameter values keyed by name."""
        return dict(zip(self.param_names, self.params))


def parameter_count(family):
    """Number of free parameters k of a family."""
    return len(PARAM_NAMES[Family(family)])


def validate_params(family, params):
    """Raise DomainError unless params has the right length and lies in the family's domain."""
    names = PARAM_NAMES[family]
    if len(params) != len(names):
        raise DomainError(
            f"{family.value} takes {len(names)} parameter(s) {names}, got {len(params)}"
        )
    for name, value in zip(names, params):
        if not np.isfinite(value):
            raise DomainError(f"{family.value}: {name} must be finite, got {value}")
        bound = INCLUSIVE_LOWER_BOUNDS.get((family, name))
        if bound is None:
            if value <= 0:
                raise DomainError(f"{family.value}: {name} must be > 0, got {value}")
        elif value < bound:
            raise DomainError(f"{family.value}: {name} must be >= {bound}, got {value}")


def _interior(y):
    """Observations as a float array, all strictly inside (0, 1)."""
    arr = np.asarray(y, dtype=float)
    if arr.size == 0 or np.any(~(arr > 0)) or np.any(~(arr < 1)):
        raise DomainError("observations must lie strictly inside (0, 1)")
    return arr


def _closed(y):
    arr = np.asarray(y, dtype=float)
    if np.any(~(arr >= 0)) or np.any(~(arr <= 1)):
        raise DomainError("cdf argument must lie in [0, 1]")
    return arr


def _observations(data):
    """Accept a Dataset (anything with .values) or a plain sequence."""
    return _interior(getattr(data, "values", data))


def _unwrap(result):
    if np.ndim(result) == 0:
        return float(result)
    return result


class UnitDistribution(ABC):
    """Pointwise evaluation for one family, on validated interior points."""

    @abstractmethod
    def logpdf(self, y, params):
        """Log density at interior y."""

    @abstractmethod
    def cdf(self, y, params):
        """CDF at interior y."""

    @abstractmethod
    def quantile(self, p, params):
        """Inverse CDF for 0 < p < 1."""


class BetaDistribution(UnitDistribution):

    def logpdf(self, y, params):
        a, b = params
        log_beta = specfun.log_gamma(a) + specfun.log_gamma(b) - specfun.log_gamma(a + b)
        return -log_beta + (a - 1) * np.log(y) + (b - 1) * np.log1p(-y)

    def cdf(self, y, params):
        a, b = params
        return specfun.reg_inc_beta(y, a, b)

    def quantile(self, p, params):
        a, b = params
        return specfun.inv_reg_inc_beta(p, a, b)


class KumaraswamyDistribution(UnitDistribution):

    def logpdf(self, y, params):
        a, b = params
        return (
            np.log(a) + np.log(b) + (a - 1) * np.log(y)
            + (b - 1) * specfun.log1m_pow(y, a)
        )

    def cdf(self, y, params):
        a, b = params
        return -np.expm1(b * specfun.log1m_pow(y, a))

    def quantile(self, p, params):
        a, b = params
        return (-np.expm1(np.log1p(-p) / b)) ** (1.0 / a)


class ToppLeoneDistribution(UnitDistribution):

    def logpdf(self, y, params):
        (theta,) = params
        # 2y - y^2 = 1 - (1 - y)^2
        return (
            np.log(theta) + LN2 + np.log1p(-y)
            + (theta - 1) * np.log1p(-((1 - y) ** 2))
        )

    def cdf(self, y, params):
        (theta,) = params
        return np.exp(theta * np.log1p(-((1 - y) ** 2)))

    def quantile(self, p, params):
        (theta,) = params
        return 1.0 - np.sqrt(-np.expm1(np.log(p) / theta))


class UnitLindleyDistribution(UnitDistribution):
    """Unit-Lindley with the (1 - y)^-3 kernel, the form that integrates to one."""

    def logpdf(self, y, params):
        (theta,) = params
        return (
            2 * np.log(theta) - np.log1p(theta) - 3 * np.log1p(-y)
            - theta * y / (1 - y)
        )

    def cdf(self, y, params):
        (theta,) = params
        t = y / (1 - y)
        return 1.0 - (1.0 + theta * t / (1.0 + theta)) * np.exp(-theta * t)

    def quantile(self, p, params):
        return _invert_cdf(self, p, params)


class MburDistribution(UnitDistribution):

    def logpdf(self, y, params):
        (alpha,) = params
        inv_a2 = alpha ** -2
        return (
            LN6 - 2 * np.log(alpha) + specfun.log1m_pow(y, inv_a2)
            + (2 * inv_a2 - 1) * np.log(y)
        )

    def cdf(self, y, params):
        (alpha,) = params
        w = y ** (alpha ** -2)
        return w * w * (3 - 2 * w)

    def quantile(self, p, params):
        (alpha,) = params
        # the MBUR CDF is I_w(2, 2) with w = y^(1/alpha^2)
        return specfun.inv_reg_inc_beta(p, 2.0, 2.0) ** (alpha ** 2)


class Gombur1Distribution(UnitDistribution):

    def logpdf(self, y, params):
        n, alpha = params
        inv_a2 = alpha ** -2
        log_norm = specfun.log_gamma(2 * n + 2) - 2 * specfun.log_gamma(n + 1)
        # n = 0 leaves the bracket with exponent 0
        bracket = n * specfun.log1m_pow(y, inv_a2) if n > 0 else 0.0
        return (
            log_norm - 2 * np.log(alpha) + bracket
            + ((n + 1) * inv_a2 - 1) * np.log(y)
        )

    def cdf(self, y, params):
        n, alpha = params
        return specfun.reg_inc_beta(y ** (alpha ** -2), n + 1, n + 1)

    def quantile(self, p, params):
        n, alpha = params
        return specfun.inv_reg_inc_beta(p, n + 1, n + 1) ** (alpha ** 2)


class Gombur2Distribution(UnitDistribution):

    def logpdf(self, y, params):
        n, alpha = params
        inv_a2 = alpha ** -2
        half = (n + 1) / 2
        log_norm = specfun.log_gamma(n + 1) - 2 * specfun.log_gamma(half)
        bracket = (n - 1) / 2 * specfun.log1m_pow(y, inv_a2) if n > 1 else 0.0
        return (
            log_norm - 2 * np.log(alpha) + bracket
            + (half * inv_a2 - 1) * np.log(y)
        )

    def cdf(self, y, params):
        n, alpha = params
        half = (n + 1) / 2
        return specfun.reg_inc_beta(y ** (alpha ** -2), half, half)

    def quantile(self, p, params):
        n, alpha = params
        half = (n + 1) / 2
        return specfun.inv_reg_inc_beta(p, half, half) ** (alpha ** 2)


DISTRIBUTIONS = {
    Family.BETA: BetaDistribution(),
    Family.KUMARASWAMY: KumaraswamyDistribution(),
    Family.TOPP_LEONE: ToppLeoneDistribution(),
    Family.UNIT_LINDLEY: UnitLindleyDistribution(),
    Family.MBUR: MburDistribution(),
    Family.GOMBUR1: Gombur1Distribution(),
    Family.GOMBUR2: Gombur2Distribution(),
}


def _invert_cdf(dist, p, params):
    """Bracketed root of cdf(y) = p on (0, 1), element-wise."""
    def solve(target):
        return brentq(
            lambda y: _cdf_closed(dist, y, params) - target,
            0.0, 1.0, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500,
        )
    p = np.asarray(p, dtype=float)
    if p.ndim == 0:
        return solve(float(p))
    return np.array([solve(float(target)) for target in p])


def _cdf_closed(dist, y, params):
    """CDF extended to the closed interval with cdf(0) = 0 and cdf(1) = 1."""
    if y <= 0:
        return 0.0
    if y >= 1:
        return 1.0
    return float(dist.cdf(y, params))


def logpdf(spec, y):
    """Log density of spec at y, 0 < y < 1."""
    return _unwrap(DISTRIBUTIONS[spec.family].logpdf(_interior(y), spec.params))


def pdf(spec, y):
    """Density of spec at y, 0 < y < 1."""
    return _unwrap(np.exp(DISTRIBUTIONS[spec.family].logpdf(_interior(y), spec.params)))


def cdf(spec, y):
    """CDF of spec at y, 0 <= y <= 1."""
    y = _closed(y)
    flat = np.atleast_1d(y)
    out = np.where(flat >= 1, 1.0, 0.0)
    inside = (flat > 0) & (flat < 1)
    if np.any(inside):
        values = DISTRIBUTIONS[spec.family].cdf(flat[inside], spec.params)
        out[inside] = np.clip(values, 0.0, 1.0)
    return _unwrap(out.reshape(y.shape))


def quantile(spec, p):
    """Inverse CDF of spec at probability 0 < p < 1."""
    arr = np.asarray(p, dtype=float)
    if np.any(~(arr > 0)) or np.any(~(arr < 1)):
        raise DomainError(f"probability must lie strictly inside (0, 1), got {p!r}")
    return _unwrap(DISTRIBUTIONS[spec.family].quantile(arr, spec.params))


def log_likelihood(spec, data):
    """Total log-likelihood; -inf when any log-density is not finite."""
    y = _observations(data)
    with np.errstate(all="ignore"):
        values = DISTRIBUTIONS[spec.family].logpdf(y, spec.params)
    total = float(np.sum(values))
    if not np.all(np.isfinite(values)) or not np.isfinite(total):
        logger.debug("non-finite log-likelihood for %s %s", spec.family.value, spec.params)
        return -np.inf
    return total


def _score_terms(alpha, y):
    inv_a2 = alpha ** -2
    log_y = np.log(y)
    log1m = specfun.log1m_pow(y, inv_a2)
    # y^w ln y / (1 - y^w), with y^w / (1 - y^w) = 1 / expm1(-w ln y)
    ratio = log_y / np.expm1(-inv_a2 * log_y)
    return inv_a2, log_y, log1m, ratio


def _check_score_params(n, alpha, n_floor):
    if not (np.isfinite(n) and n > n_floor):
        raise DomainError(f"n must be > {n_floor} for the score, got {n}")
    if not (np.isfinite(alpha) and alpha > 0):
        raise DomainError(f"alpha must be > 0, got {alpha}")


def score_gombur1(n, alpha, data):
    """Gradient (dl/dn, dl/dalpha) of the GOMBUR-1 log-likelihood."""
    _check_score_params(n, alpha, 0.0)
    y = _observations(data)
    count = y.size
    inv_a2, log_y, log1m, ratio = _score_terms(alpha, y)
    dl_dn = (
        count * (2 * specfun.digamma(2 * n + 2) - 2 * specfun.digamma(n + 1))
        + np.sum(log1m) + inv_a2 * np.sum(log_y)
    )
    dl_dalpha = (
        -2 * count / alpha
        + (2 * n / alpha ** 3) * np.sum(ratio)
        - (2 * (n + 1) / alpha ** 3) * np.sum(log_y)
    )
    return float(dl_dn), float(dl_dalpha)


def score_gombur2(n, alpha, data):
    """Gradient (dl/dn, dl/dalpha) of the GOMBUR-2 log-likelihood."""
    _check_score_params(n, alpha, 1.0)
    y = _observations(data)
    count = y.size
    inv_a2, log_y, log1m, ratio = _score_terms(alpha, y)
    dl_dn = (
        count * (specfun.digamma(n + 1) - specfun.digamma((n + 1) / 2))
        + 0.5 * np.sum(log1m) + 0.5 * inv_a2 * np.sum(log_y)
    )
    dl_dalpha = (
        -2 * count / alpha
        + ((n - 1) / alpha ** 3) * np.sum(ratio)
        - ((n + 1) / alpha ** 3) * np.sum(log_y)
    )
    return float(dl_dn), float(dl_dalpha)


def score(spec, data):
    """Analytic score for the GOMBUR families."""
    n, alpha = spec.params
    if spec.family is Family.GOMBUR1:
        return score_gombur1(n, alpha, data)
    if spec.family is Family.GOMBUR2:
        return score_gombur2(n, alpha, data)
    raise DomainError(f"no analytic score for {spec.family.value}")


def gombur2_from_gombur1(n1):
    """Version-2 shape equivalent to a version-1 shape: n2 = 2 n1 + 1."""
    return 2.0 * n1 + 1.0


def gombur1_from_gombur2(n2):
    """Version-1 shape equivalent to a version-2 shape: n1 = (n2 - 1) / 2."""
    return (n2 - 1.0) / 2.0
