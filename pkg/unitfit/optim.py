"""
Nelder-Mead simplex minimizer and the parameter-domain transforms used to
search each family's likelihood in an unconstrained space.
"""
import logging
from dataclasses import dataclass, asdict

import numpy as np

from unitfit.constants.config import (
    Family,
    SIMPLEX_DEFAULTS,
    SIMPLEX_RELATIVE_STEP,
    SIMPLEX_ZERO_STEP,
)
from unitfit.exceptions import ConfigError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplexConfig:
    """Nelder-Mead coefficients, tolerances and iteration budget."""

    reflection: float = SIMPLEX_DEFAULTS["reflection"]
    expansion: float = SIMPLEX_DEFAULTS["expansion"]
    contraction: float = SIMPLEX_DEFAULTS["contraction"]
    shrink: float = SIMPLEX_DEFAULTS["shrink"]
    f_tolerance: float = SIMPLEX_DEFAULTS["f_tolerance"]
    x_tolerance: float = SIMPLEX_DEFAULTS["x_tolerance"]
    max_iterations: int = SIMPLEX_DEFAULTS["max_iterations"]
    restarts: int = SIMPLEX_DEFAULTS["restarts"]

    def __post_init__(self):
        if not self.reflection > 0:
            raise ConfigError(f"reflection must be > 0, got {self.reflection}")
        if not self.expansion > 1:
            raise ConfigError(f"expansion must be > 1, got {self.expansion}")
        if not 0 < self.contraction < 1:
            raise ConfigError(f"contraction must be in (0, 1), got {self.contraction}")
        if not 0 < self.shrink < 1:
            raise ConfigError(f"shrink must be in (0, 1), got {self.shrink}")
        if not (self.f_tolerance > 0 and self.x_tolerance > 0):
            raise ConfigError("tolerances must be > 0")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be a positive integer, got {self.max_iterations}")
        if int(self.restarts) != self.restarts or self.restarts < 0:
            raise ConfigError(f"restarts must be a non-negative integer, got {self.restarts}")

    def as_dict(self):
        return asdict(self)


@dataclass
class OptimResult:
    """Outcome of a minimization, reported on the caller's (untransformed) scale."""

    x_min: np.ndarray
    f_min: float
    iterations: int
    converged: bool
    function_evals: int


def initial_simplex(x0):
    """Simplex of d + 1 vertices: x0 plus one 5% (or 0.00025 absolute) step per coordinate."""
    x0 = np.asarray(x0, dtype=float)
    vertices = [x0.copy()]
    for i in range(x0.size):
        vertex = x0.copy()
        if vertex[i] != 0:
            vertex[i] = (1 + SIMPLEX_RELATIVE_STEP) * vertex[i]
        else:
            vertex[i] = SIMPLEX_ZERO_STEP
        vertices.append(vertex)
    return np.array(vertices)


class _CountedObjective:
    """Objective wrapper: counts calls and maps non-finite values to +inf."""

    def __init__(self, func):
        self.func = func
        self.evals = 0

    def __call__(self, x):
        self.evals += 1
        try:
            value = float(self.func(x))
        except (DomainError, FloatingPointError, OverflowError, ZeroDivisionError):
            return np.inf
        return value if np.isfinite(value) else np.inf


def _has_converged(sim, fsim, config):
    return (
        np.max(np.abs(fsim[1:] - fsim[0])) <= config.f_tolerance
        and np.max(np.abs(sim[1:] - sim[0])) <= config.x_tolerance
    )


def _simplex_run(func, x0, config):
    """One Nelder-Mead run from a fresh simplex around x0."""
    rho = config.reflection
    chi = config.expansion
    psi = config.contraction
    sigma = config.shrink

    sim = initial_simplex(x0)
    fsim = np.array([func(x) for x in sim])
    iterations = 0
    converged = False

    while True:
        order = np.argsort(fsim, kind="stable")
        sim = sim[order]
        fsim = fsim[order]
        if np.isfinite(fsim[-1]) and _has_converged(sim, fsim, config):
            converged = True
            break
        if iterations >= config.max_iterations:
            break
        iterations += 1

        centroid = sim[:-1].mean(axis=0)
        worst = sim[-1]

        # Reflection
        xr = centroid + rho * (centroid - worst)
        fr = func(xr)
        if fr < fsim[0]:
            # Expansion
            xe = centroid + rho * chi * (centroid - worst)
            fe = func(xe)
            if fe < fr:
                sim[-1], fsim[-1] = xe, fe
            else:
                sim[-1], fsim[-1] = xr, fr
            continue
        if fr < fsim[-2]:
            sim[-1], fsim[-1] = xr, fr
            continue

        # Contraction
        if fr < fsim[-1]:
            xc = centroid + psi * rho * (centroid - worst)
            fc = func(xc)
            if fc <= fr:
                sim[-1], fsim[-1] = xc, fc
                continue
        else:
            xcc = centroid - psi * (centroid - worst)
            fcc = func(xcc)
            if fcc < fsim[-1]:
                sim[-1], fsim[-1] = xcc, fcc
                continue

        # Shrink toward the best vertex
        for j in range(1, sim.shape[0]):
            sim[j] = sim[0] + sigma * (sim[j] - sim[0])
            fsim[j] = func(sim[j])

    return sim[0].copy(), float(fsim[0]), iterations, converged


def minimize(objective, x0, config=None):
    """Minimize objective from x0 with Nelder-Mead plus config.restarts fresh-simplex restarts."""
    config = config or SimplexConfig()
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    if x0.ndim != 1 or x0.size < 1:
        raise DomainError("x0 must be a non-empty vector")

    func = _CountedObjective(objective)
    f0 = func(x0)
    if not np.isfinite(f0):
        raise DomainError(f"objective is not finite at the starting point {x0}")

    x_best, f_best = x0, f0
    total_iterations = 0
    converged = False
    for run in range(config.restarts + 1):
        x_run, f_run, iterations, converged = _simplex_run(func, x_best, config)
        total_iterations += iterations
        if f_run <= f_best:
            x_best, f_best = x_run, f_run
        logger.debug(
            "simplex run %d: f=%.10g after %d iterations (converged=%s)",
            run, f_run, iterations, converged,
        )

    return OptimResult(
        x_min=x_best,
        f_min=f_best,
        iterations=total_iterations,
        converged=converged,
        function_evals=func.evals,
    )


def _check_interior(family, params):
    params = np.asarray(params, dtype=float)
    if not np.all(np.isfinite(params)) or np.any(params <= 0):
        raise DomainError(f"{family.value}: parameters must be strictly interior, got {params}")
    if family is Family.GOMBUR2 and params[0] <= 1:
        raise DomainError(f"gombur2: n must be > 1 for the transform, got {params[0]}")
    return params


def to_unconstrained(family, params):
    """Map strictly interior parameters to R^d (log scale; GOMBUR-2 via m = (n - 1) / 2)."""
    family = Family(family)
    params = _check_interior(family, params).copy()
    if family is Family.GOMBUR2:
        params[0] = (params[0] - 1.0) / 2.0
    return np.log(params)


def from_unconstrained(family, t):
    """Inverse of to_unconstrained."""
    family = Family(family)
    params = np.exp(np.asarray(t, dtype=float))
    if family is Family.GOMBUR2:
        params[0] = 2.0 * params[0] + 1.0
    return params
