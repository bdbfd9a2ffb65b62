"""
Comparison tables (one block per fitted family) and plot point sets, plus
their renderings: JSON-ready records, CSV frames, markdown and SVG.

Every rendering is produced from the record dict returned by table_record,
so a JSON dump re-rendered to markdown matches the direct markdown output.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from unitfit.constants.config import (  # noqa: E402
    Family,
    FAMILY_LABELS,
    FAMILY_ORDER,
    PDF_GRID_POINTS,
    PlotKind,
    SVG_FIGSIZE,
    SVG_HASH_SALT,
)
from unitfit.distributions import cdf, pdf, quantile  # noqa: E402
from unitfit.exceptions import DomainError, UnitFitError  # noqa: E402
from unitfit.gof import criteria, gof_report  # noqa: E402
from unitfit.inference import fit_mle  # noqa: E402
from unitfit.utils.helpers import format_number  # noqa: E402

logger = logging.getLogger(__name__)

CRITERIA_NAMES = ("aic", "caic", "bic", "hqic")


@dataclass
class FamilyBlock:
    """Fit, goodness-of-fit and criteria for one family; error is set when the fit failed."""

    family: object
    fit: object = None
    gof: object = None
    criteria: object = None
    error: str = None

    @property
    def failed(self):
        return self.fit is None


@dataclass
class ComparisonTable:
    dataset: object
    blocks: list = field(default_factory=list)

    def block(self, family):
        for block in self.blocks:
            if block.family is family:
                return block
        raise KeyError(family)


@dataclass
class PlotSeries:
    """Point sets keyed by series label; bins = (edges, densities) for pdf overlays."""

    kind: PlotKind
    points: dict
    bins: tuple = None


def fit_family(data, family, config=None):
    """Fit one family and score it; failures come back as a marked block."""
    try:
        fit = fit_mle(family, data, config)
    except UnitFitError as e:
        logger.warning("fit of %s failed: %s", family.value, e)
        return FamilyBlock(family=family, error=str(e))

    report = gof_report(data, lambda y: cdf(fit.spec, y))
    block = FamilyBlock(
        family=family,
        fit=fit,
        gof=report,
        criteria=criteria(fit.log_lik, fit.k, fit.n_obs),
    )
    if not fit.converged:
        block.error = "did not converge"
    return block


def build_comparison(data, families=None, config=None, max_workers=1):
    """Fit every family on data; blocks keep the canonical family order."""
    chosen = set(families or FAMILY_ORDER)
    if not chosen:
        raise DomainError("at least one family is required")
    ordered = [f for f in FAMILY_ORDER if f in chosen]
    logger.debug("comparing %s on %s", [f.value for f in ordered], data.label)
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            blocks = list(pool.map(lambda f: fit_family(data, f, config), ordered))
    else:
        blocks = [fit_family(data, f, config) for f in ordered]
    return ComparisonTable(dataset=data, blocks=blocks)


def best_by_criterion(table, criterion="aic"):
    """Family with the lowest value of an information criterion among successful fits."""
    if criterion not in CRITERIA_NAMES:
        raise DomainError(f"unknown criterion {criterion!r}")
    scored = [b for b in table.blocks if not b.failed]
    if not scored:
        return None
    return min(scored, key=lambda b: getattr(b.criteria, criterion)).family


def _list(value):
    return None if value is None else np.asarray(value, dtype=float).tolist()


def block_record(block):
    """JSON-ready dict mirroring FitResult, GofReport and CriteriaReport field names."""
    record = {"family": block.family.value, "error": block.error}
    if block.failed:
        record["converged"] = False
        return record
    fit = block.fit
    record.update({
        "converged": fit.converged,
        "params": fit.spec.as_dict(),
        "n_obs": fit.n_obs,
        "log_lik": fit.log_lik,
        "vcov_scaled": _list(fit.vcov_scaled),
        "se": _list(fit.se),
        "determinant": fit.determinant if fit.k > 1 else None,
        "wald_z": _list(fit.wald_z),
        "wald_p": _list(fit.wald_p),
        "wald_labels": list(fit.wald_labels),
        "inference_error": fit.inference_error,
        "iterations": fit.iterations,
        "function_evals": fit.function_evals,
    })
    record.update(block.gof.as_dict())
    record.update({name: getattr(block.criteria, name) for name in CRITERIA_NAMES})
    record.update({"k": block.criteria.k, "n": block.criteria.n})
    return record


def table_record(table):
    """Top-level record: {'dataset': ..., 'families': [...]}."""
    dataset = table.dataset
    return {
        "dataset": {"id": dataset.id, "name": dataset.name, "n": dataset.n},
        "families": [block_record(b) for b in table.blocks],
    }


def records_frame(record):
    """One row per family with flattened, full-precision fields (CSV output)."""
    rows = []
    for fam in record["families"]:
        row = {"dataset": record["dataset"]["name"], "family": fam["family"]}
        if "params" in fam:
            names = list(fam["params"])
            for i, name in enumerate(names):
                row[f"param_{i + 1}_name"] = name
                row[f"param_{i + 1}"] = fam["params"][name]
                row[f"se_{i + 1}"] = fam["se"][i] if fam["se"] else None
                row[f"wald_p_{i + 1}"] = fam["wald_p"][i] if fam["wald_p"] else None
                for j in range(len(names)):
                    row[f"var_{i + 1}{j + 1}"] = fam["vcov_scaled"][i][j] if fam["vcov_scaled"] else None
            for key in ("determinant", "log_lik", "aic", "caic", "bic", "hqic",
                        "ks", "ks_p", "h0_rejected", "ad", "cvm", "k", "n"):
                row[key] = fam[key]
        row["converged"] = fam["converged"]
        row["error"] = fam["error"]
        rows.append(row)
    return pd.DataFrame(rows)


def _decision(fam):
    return "reject" if fam["h0_rejected"] else "Fail to reject"


def _var_rows(fam, size):
    if not fam.get("vcov_scaled"):
        return ["-"] * size
    matrix = fam["vcov_scaled"]
    rows = [", ".join(format_number(v) for v in row) for row in matrix]
    return rows + [""] * (size - len(rows))


def markdown_lines(record):
    """Comparison layout: metrics as rows, families as columns."""
    families = record["families"]
    width = max([len(f.get("params", {})) for f in families] + [1])
    headers = ["", *(FAMILY_LABELS[_family(f)] for f in families)]
    rows = []

    def add(label, cells):
        rows.append([label, *cells])

    for i in range(width):
        add("theta" if i == 0 else "", [_param_cell(f, i) for f in families])
    var_cells = [_var_rows(f, width) if "params" in f else ["-"] * width for f in families]
    for i in range(width):
        add("Var" if i == 0 else "", [cells[i] for cells in var_cells])
    for i in range(width):
        add(f"SE({i + 1})", [_indexed(f, "se", i) for f in families])
    for key, label in (("aic", "AIC"), ("caic", "CAIC"), ("bic", "BIC"), ("hqic", "HQIC"), ("log_lik", "LL")):
        add(label, [format_number(f.get(key)) for f in families])
    add("K-S Value", [format_number(f.get("ks")) for f in families])
    add("H0", [_decision(f) if "h0_rejected" in f else "-" for f in families])
    add("P-value", [format_number(f.get("ks_p")) for f in families])
    add("AD", [format_number(f.get("ad")) for f in families])
    add("CVM", [format_number(f.get("cvm")) for f in families])
    add("Determinant", [
        format_number(f.get("determinant")) if len(f.get("params", {})) > 1 else "-"
        for f in families
    ])
    for i in range(width):
        add(f"Significant({i + 1})", [_label(f, i) for f in families])
    add("Converged", ["yes" if f["converged"] else "no" for f in families])

    dataset = record["dataset"]
    title = f"{dataset['name']} (n = {dataset['n']})"
    lines = [f"### {title}", "", _md_row(headers), _md_row(["---"] * len(headers))]
    lines += [_md_row(row) for row in rows]
    notes = [f"- {FAMILY_LABELS[_family(f)]}: {f['error']}" for f in families if f.get("error")]
    if notes:
        lines += [""] + notes
    return lines


def render_markdown(record):
    return "\n".join(markdown_lines(record)) + "\n"


def _family(fam):
    return Family(fam["family"])


def _param_cell(fam, i):
    params = fam.get("params")
    if params is None:
        return "failed" if i == 0 else ""
    names = list(params)
    if i >= len(names):
        return ""
    return f"{names[i]} = {format_number(params[names[i]])}"


def _indexed(fam, key, i):
    values = fam.get(key)
    if not values or i >= len(values):
        return "-"
    return format_number(values[i])


def _label(fam, i):
    labels = fam.get("wald_labels")
    if not labels or i >= len(labels):
        return "-"
    return labels[i]


def _md_row(cells):
    return "| " + " | ".join(str(c) for c in cells) + " |"


def frame_markdown(frame):
    """Markdown table of a DataFrame with floats at human precision."""
    headers = [str(c) for c in frame.columns]
    lines = [_md_row(headers), _md_row(["---"] * len(headers))]
    for row in frame.itertuples(index=False):
        lines.append(_md_row(format_number(v) if isinstance(v, float) else v for v in row))
    return "\n".join(lines) + "\n"


def _sorted(data):
    return np.sort(np.asarray(getattr(data, "values", data), dtype=float), kind="stable")


def _interior_grid():
    return np.linspace(0.0, 1.0, PDF_GRID_POINTS + 2)[1:-1]


def _label_of(spec):
    return FAMILY_LABELS[spec.family]


def pp_points(data, spec):
    """(F(y_(i)), (i - 0.5)/n) for the sorted sample."""
    y = _sorted(data)
    n = y.size
    empirical = (np.arange(1, n + 1) - 0.5) / n
    return PlotSeries(kind=PlotKind.PP, points={_label_of(spec): (np.atleast_1d(cdf(spec, y)), empirical)})


def qq_points(data, spec):
    """(Q((i - 0.5)/n), y_(i)) for the sorted sample."""
    y = _sorted(data)
    n = y.size
    probs = (np.arange(1, n + 1) - 0.5) / n
    return PlotSeries(kind=PlotKind.QQ, points={_label_of(spec): (np.atleast_1d(quantile(spec, probs)), y)})


def ecdf_overlay(data, specs):
    """Empirical staircase (y_(i), i/n) and each fitted CDF on the interior grid."""
    y = _sorted(data)
    n = y.size
    points = {"empirical": (y, np.arange(1, n + 1) / n)}
    grid = _interior_grid()
    for spec in specs:
        points[_label_of(spec)] = (grid, np.asarray(cdf(spec, grid)))
    return PlotSeries(kind=PlotKind.ECDF, points=points)


def sturges_bins(n):
    return int(np.ceil(np.log2(n))) + 1


def pdf_overlay(data, specs):
    """Density histogram (Sturges bins over [min, max]) and each fitted pdf on the interior grid."""
    y = _sorted(data)
    densities, edges = np.histogram(y, bins=sturges_bins(y.size), range=(y[0], y[-1]), density=True)
    grid = _interior_grid()
    points = {_label_of(spec): (grid, np.asarray(pdf(spec, grid))) for spec in specs}
    return PlotSeries(kind=PlotKind.PDF, points=points, bins=(edges, densities))


def plot_series(kind, data, specs):
    """Dispatch on plot kind; pp and qq series merge one point set per family."""
    kind = PlotKind(kind)
    if kind is PlotKind.ECDF:
        return ecdf_overlay(data, specs)
    if kind is PlotKind.PDF:
        return pdf_overlay(data, specs)
    builder = pp_points if kind is PlotKind.PP else qq_points
    points = {}
    for spec in specs:
        points.update(builder(data, spec).points)
    return PlotSeries(kind=kind, points=points)


def series_frame(series):
    """Long-format point table: series, x, y (histogram rows carry bin bounds)."""
    rows = []
    for label, (xs, ys) in series.points.items():
        rows.extend({"series": label, "x": float(x), "y": float(v)} for x, v in zip(xs, ys))
    frame = pd.DataFrame(rows, columns=["series", "x", "y"])
    if series.bins is not None:
        edges, densities = series.bins
        hist = pd.DataFrame({
            "series": "histogram",
            "x": (edges[:-1] + edges[1:]) / 2,
            "y": densities,
            "bin_left": edges[:-1],
            "bin_right": edges[1:],
        })
        frame = pd.concat([frame, hist], ignore_index=True)
    return frame


def render_svg(series, path, title=None):
    """Write an SVG 1.1 file: one polyline per series, diagonal reference for pp/qq."""
    plt.rcParams["svg.hashsalt"] = SVG_HASH_SALT
    fig, ax = plt.subplots(figsize=SVG_FIGSIZE)
    try:
        if series.bins is not None:
            edges, densities = series.bins
            ax.stairs(densities, edges, fill=True, alpha=0.3, label="histogram")
        for label, (xs, ys) in series.points.items():
            if series.kind is PlotKind.ECDF and label == "empirical":
                ax.step(xs, ys, where="post", label=label)
            elif series.kind in (PlotKind.PP, PlotKind.QQ):
                ax.plot(xs, ys, marker="o", markersize=3, linestyle="-", label=label)
            else:
                ax.plot(xs, ys, label=label)
        if series.kind in (PlotKind.PP, PlotKind.QQ):
            ax.plot([0, 1], [0, 1], color="grey", linestyle="--", linewidth=1, label="diagonal")
        ax.set_title(title or series.kind.value)
        ax.legend()
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
