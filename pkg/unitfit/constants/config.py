from enum import Enum

# Distribution families (CLI tokens as values)
class Family(Enum):
    BETA = "beta"
    KUMARASWAMY = "kumaraswamy"
    TOPP_LEONE = "topp_leone"
    UNIT_LINDLEY = "unit_lindley"
    MBUR = "mbur"
    GOMBUR1 = "gombur1"
    GOMBUR2 = "gombur2"

# Canonical output order
FAMILY_ORDER = [
    Family.BETA,
    Family.KUMARASWAMY,
    Family.TOPP_LEONE,
    Family.UNIT_LINDLEY,
    Family.MBUR,
    Family.GOMBUR1,
    Family.GOMBUR2,
]

# Column headers used in rendered tables
FAMILY_LABELS = {
    Family.BETA: "Beta",
    Family.KUMARASWAMY: "Kumaraswamy",
    Family.TOPP_LEONE: "Topp-Leone",
    Family.UNIT_LINDLEY: "Unit-Lindley",
    Family.MBUR: "MBUR",
    Family.GOMBUR1: "GOMBUR-1",
    Family.GOMBUR2: "GOMBUR-2",
}

# Parameter names, in ParamVector order
PARAM_NAMES = {
    Family.BETA: ("alpha", "beta"),
    Family.KUMARASWAMY: ("alpha", "beta"),
    Family.TOPP_LEONE: ("theta",),
    Family.UNIT_LINDLEY: ("theta",),
    Family.MBUR: ("alpha",),
    Family.GOMBUR1: ("n", "alpha"),
    Family.GOMBUR2: ("n", "alpha"),
}

# Inclusive lower bounds of each parameter; every other bound is strict (> 0)
INCLUSIVE_LOWER_BOUNDS = {
    (Family.GOMBUR1, "n"): 0.0,
    (Family.GOMBUR2, "n"): 1.0,
}

# Multi-start grids (natural parameter scale)
ALPHA_STARTS = (0.5, 1.0, 2.0)
SHAPE_STARTS = (0.5, 2.0, 10.0)
SINGLE_PARAM_STARTS = (0.5, 1.0, 2.0, 10.0)

# Nelder-Mead defaults
SIMPLEX_DEFAULTS = {
    "reflection": 1.0,
    "expansion": 2.0,
    "contraction": 0.5,
    "shrink": 0.5,
    "f_tolerance": 1e-10,
    "x_tolerance": 1e-8,
    "max_iterations": 2000,
    "restarts": 1,
}
SIMPLEX_RELATIVE_STEP = 0.05
SIMPLEX_ZERO_STEP = 0.00025

# Environment override for SimplexConfig.max_iterations
MAX_ITERS_ENV_VAR = "UNITFIT_MAX_ITERS"

# Finite-difference Hessian step (relative)
HESSIAN_STEP = 1e-4

# Hypothesis testing
KS_LEVEL = 0.05
WALD_THRESHOLD = 0.001
AD_CLAMP_LOW = 1e-300
AD_CLAMP_HIGH = 1.0 - 1e-15

# Plot data
PDF_GRID_POINTS = 512

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NOT_CONVERGED = 4
EXIT_IO = 5

# Output formats
class OutputFormat(Enum):
    MARKDOWN = "markdown"
    CSV = "csv"
    JSON = "json"

class PlotKind(Enum):
    ECDF = "ecdf"
    PDF = "pdf"
    PP = "pp"
    QQ = "qq"

# Decimal places in human-readable output
HUMAN_DECIMALS = 4

# Descriptive statistics column headers
DESCRIBE_HEADERS = [
    "min",
    "mean",
    "std",
    "skewness",
    "kurtosis",
    "Q(25)",
    "Q(50)",
    "Q(75)",
    "max",
]

# SVG output
SVG_HASH_SALT = "unitfit"
SVG_FIGSIZE = (6.4, 4.8)
