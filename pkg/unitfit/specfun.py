"""
Special functions used by the GOMBUR densities, CDFs and score equations.

Thin, domain-checked wrappers around scipy.special. Every function accepts a
scalar or an array and returns the same shape (a Python float for scalar
input).
"""
import numpy as np
from scipy import special

from unitfit.exceptions import DomainError


def _as_positive(x, name):
    """Validate that every element of x is finite and strictly positive."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"{name} must be finite and > 0, got {x!r}")
    return arr


def _unwrap(result):
    """Return a Python float for 0-d results."""
    if np.ndim(result) == 0:
        return float(result)
    return result


def log_gamma(x):
    """Natural log of the gamma function for x > 0."""
    return _unwrap(special.gammaln(_as_positive(x, "x")))


def digamma(x):
    """Digamma function psi(x) = d/dx ln Gamma(x) for x > 0."""
    return _unwrap(special.digamma(_as_positive(x, "x")))


def reg_inc_beta(x, a, b):
    """Regularized incomplete beta function I_x(a, b) on 0 <= x <= 1."""
    a = _as_positive(a, "a")
    b = _as_positive(b, "b")
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0) or np.any(x > 1):
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    return _unwrap(np.clip(special.betainc(a, b, x), 0.0, 1.0))


def inv_reg_inc_beta(p, a, b):
    """Inverse of I_x(a, b) in x, for 0 <= p <= 1."""
    a = _as_positive(a, "a")
    b = _as_positive(b, "b")
    p = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    return _unwrap(special.betaincinv(a, b, p))


def log1m_pow(y, exponent):
    """ln(1 - y**exponent) for 0 < y < 1, accurate when y**exponent is near 1."""
    return np.log(-np.expm1(exponent * np.log(y)))
