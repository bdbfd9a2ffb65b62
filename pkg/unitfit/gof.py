"""
Goodness-of-fit statistics and information criteria.

KS, CVM and AD are applied to the sorted sample exactly as defined:
  KS  = sup |F_n - F|
  CVM = 1/(12n) + sum (F(y_(i)) - (2i - 1)/(2n))^2
  AD  = -n - sum ((2i - 1)/n) [ln F(y_(i)) + ln(1 - F(y_(n-i+1)))]
"""
import logging
from dataclasses import dataclass, asdict

import numpy as np
from scipy import special

from unitfit.constants.config import KS_LEVEL, AD_CLAMP_LOW, AD_CLAMP_HIGH
from unitfit.exceptions import DomainError

logger = logging.getLogger(__name__)


@dataclass
class GofReport:
    """KS (with p-value and decision), AD and CVM for one fitted CDF."""

    ks: float
    ks_p: float
    h0_rejected: bool
    ad: float
    cvm: float
    ad_clamped: bool = False

    def as_dict(self):
        return asdict(self)


@dataclass
class CriteriaReport:
    """Penalized-likelihood criteria for one fit."""

    aic: float
    caic: float
    bic: float
    hqic: float
    log_lik: float
    k: int
    n: int

    def as_dict(self):
        return asdict(self)


def _sorted_probabilities(data, cdf):
    """F evaluated at the sorted sample (stable sort keeps ties in order)."""
    y = np.sort(np.asarray(getattr(data, "values", data), dtype=float), kind="stable")
    if y.size == 0:
        raise DomainError("goodness-of-fit needs a non-empty sample")
    return np.asarray(cdf(y), dtype=float).reshape(y.shape)


def ks_statistic(data, cdf):
    """Exact supremum of |F_n - F| for the right-continuous empirical CDF."""
    probs = _sorted_probabilities(data, cdf)
    n = probs.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - probs), np.max(probs - (i - 1) / n)))


def ks_pvalue(d, n):
    """Asymptotic Kolmogorov tail probability with the small-sample adjustment."""
    if not 0 <= d <= 1:
        raise DomainError(f"KS distance must lie in [0, 1], got {d}")
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    root_n = np.sqrt(n)
    lam = (root_n + 0.12 + 0.11 / root_n) * d
    # scipy's kolmogorov is Q_K(lam) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lam^2)
    return float(np.clip(special.kolmogorov(lam), 0.0, 1.0))


def cvm_statistic(data, cdf):
    """Cramer-von Mises statistic."""
    probs = _sorted_probabilities(data, cdf)
    n = probs.size
    i = np.arange(1, n + 1)
    return float(1.0 / (12 * n) + np.sum((probs - (2 * i - 1) / (2 * n)) ** 2))


def _clamp(probs):
    clamped = np.clip(probs, AD_CLAMP_LOW, AD_CLAMP_HIGH)
    return clamped, bool(np.any(clamped != probs))


def ad_statistic_checked(data, cdf):
    """Anderson-Darling statistic and whether any F value had to be clamped."""
    probs, clamped = _clamp(_sorted_probabilities(data, cdf))
    if clamped:
        logger.warning("AD: fitted CDF reached 0 or 1 at a sample point; values clamped")
    n = probs.size
    i = np.arange(1, n + 1)
    terms = (2 * i - 1) / n * (np.log(probs) + np.log1p(-probs[::-1]))
    return float(-n - np.sum(terms)), clamped


def ad_statistic(data, cdf):
    """Anderson-Darling statistic."""
    return ad_statistic_checked(data, cdf)[0]


def gof_report(data, cdf, level=KS_LEVEL):
    """All three statistics plus the KS decision at the given level."""
    n = np.asarray(getattr(data, "values", data)).size
    ks = ks_statistic(data, cdf)
    ks_p = ks_pvalue(ks, n)
    ad, clamped = ad_statistic_checked(data, cdf)
    return GofReport(
        ks=ks,
        ks_p=ks_p,
        h0_rejected=bool(ks_p < level),
        ad=ad,
        cvm=cvm_statistic(data, cdf),
        ad_clamped=clamped,
    )


def criteria(log_lik, k, n):
    """AIC, CAIC (2kn/(n-k-1) penalty), BIC and HQIC."""
    if n <= k + 1:
        raise DomainError(f"criteria need n > k + 1, got n={n}, k={k}")
    deviance = -2.0 * log_lik
    return CriteriaReport(
        aic=float(deviance + 2 * k),
        caic=float(deviance + 2.0 * k * n / (n - k - 1)),
        bic=float(deviance + k * np.log(n)),
        hqic=float(deviance + 2 * k * np.log(np.log(n))),
        log_lik=float(log_lik),
        k=int(k),
        n=int(n),
    )
