import logging
import math
import os

import yaml

from unitfit.constants.config import (
    Family,
    FAMILY_ORDER,
    HUMAN_DECIMALS,
    MAX_ITERS_ENV_VAR,
)
from unitfit.exceptions import ConfigError, UnknownFamilyError
from unitfit.optim import SimplexConfig

logger = logging.getLogger(__name__)


def parse_token(token):
    """Parse one data token; returns (value, None) or (None, 'parse' | 'domain')."""
    try:
        value = float(token)
    except ValueError:
        return None, "parse"
    if not math.isfinite(value):
        return None, "parse"
    if not 0 < value < 1:
        return None, "domain"
    return value, None


def parse_family(token):
    """Family enum from its lowercase CLI token."""
    try:
        return Family(token.strip().lower())
    except ValueError:
        valid = ", ".join(f.value for f in FAMILY_ORDER)
        raise UnknownFamilyError(f"unknown family {token!r}; expected one of: {valid}") from None


def parse_families(text):
    """Comma-separated family tokens, returned in canonical order without duplicates."""
    if not text:
        return list(FAMILY_ORDER)
    chosen = {parse_family(token) for token in text.split(",") if token.strip()}
    if not chosen:
        raise UnknownFamilyError("no family given")
    return [f for f in FAMILY_ORDER if f in chosen]


def format_number(value, decimals=HUMAN_DECIMALS):
    """Fixed-point rendering for human formats; '-' for missing values."""
    if value is None:
        return "-"
    if isinstance(value, float) and math.isnan(value):
        return "-"
    return f"{value:.{decimals}f}"


def load_settings(path=None, environ=None):
    """Simplex settings: defaults, then an optional YAML file, then the environment override."""
    environ = os.environ if environ is None else environ
    settings = {}
    if path:
        try:
            with open(path, "r") as f:
                loaded = yaml.safe_load(f) or {}
        except OSError as e:
            raise ConfigError(f"cannot read settings file {path!r}: {e}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"settings file {path!r} is not valid YAML: {e}") from e
        if not isinstance(loaded, dict):
            raise ConfigError(f"settings file {path!r} must contain a mapping")
        settings.update(loaded)
        logger.debug("loaded settings from %s: %s", path, loaded)

    override = environ.get(MAX_ITERS_ENV_VAR)
    if override:
        try:
            settings["max_iterations"] = int(override)
        except ValueError:
            raise ConfigError(f"{MAX_ITERS_ENV_VAR} must be an integer, got {override!r}") from None
    return settings


def build_simplex_config(path=None, environ=None):
    """SimplexConfig from load_settings, rejecting unknown keys."""
    settings = load_settings(path, environ)
    known = set(SimplexConfig.__dataclass_fields__)
    unknown = sorted(set(settings) - known)
    if unknown:
        raise ConfigError(f"unknown simplex settings: {', '.join(unknown)}")
    return SimplexConfig(**settings)
