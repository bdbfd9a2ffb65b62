"""
Command-line front end: list-datasets, describe, summary, fit, compare, sweep, plot.
"""
import argparse
import json
import logging
import sys
import traceback
from pathlib import Path

import pandas as pd

from unitfit.constants.config import (
    Family,
    OutputFormat,
    PlotKind,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_DATA,
    EXIT_NOT_CONVERGED,
    EXIT_IO,
)
from unitfit.data import (
    describe_frame,
    embedded_catalog,
    load_embedded,
    resolve_dataset,
    corpus_summary,
)
from unitfit.exceptions import (
    ConfigError,
    DataParseError,
    DatasetNotFoundError,
    DomainError,
    UnknownFamilyError,
)
from unitfit.inference import fit_mle
from unitfit.report import (
    build_comparison,
    frame_markdown,
    plot_series,
    records_frame,
    render_markdown,
    render_svg,
    series_frame,
    table_record,
)
from unitfit.utils.helpers import build_simplex_config, parse_family, parse_families

logger = logging.getLogger("unitfit")


def configure_logging(verbose=False):
    """Log to stderr in the 'LEVEL - message' format; stdout carries results only."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def emit(text, out=None):
    """Write text to the --out file, or to stdout."""
    if out:
        Path(out).write_text(text)
        logger.debug("wrote %s", out)
    else:
        sys.stdout.write(text)


def render_frame(frame, fmt):
    """Render a plain DataFrame in the requested format."""
    if fmt is OutputFormat.CSV:
        return frame.to_csv(index=False)
    if fmt is OutputFormat.JSON:
        return json.dumps(frame.to_dict(orient="records"), indent=2) + "\n"
    return frame_markdown(frame)


def render_record(record, fmt):
    """Render a comparison/fit record in the requested format."""
    if fmt is OutputFormat.JSON:
        return json.dumps(record, indent=2) + "\n"
    if fmt is OutputFormat.CSV:
        return records_frame(record).to_csv(index=False)
    return render_markdown(record)


def _all_converged(records):
    return all(fam["converged"] for record in records for fam in record["families"])


def cmd_list_datasets(args):
    """Print id, name and size of every embedded dataset."""
    catalog = embedded_catalog()
    fmt = OutputFormat(args.format)
    if fmt is OutputFormat.MARKDOWN:
        emit("".join(f"{i}  {name}  {n}\n" for i, name, n in catalog), args.out)
    else:
        frame = pd.DataFrame(catalog, columns=["id", "name", "n"])
        emit(render_frame(frame, fmt), args.out)
    return EXIT_OK


def cmd_describe(args):
    """Descriptive statistics of one dataset."""
    dataset = resolve_dataset(args.dataset)
    emit(render_frame(describe_frame([dataset]), OutputFormat(args.format)), args.out)
    return EXIT_OK


def cmd_summary(args):
    """Descriptive statistics of every embedded dataset."""
    emit(render_frame(corpus_summary(), OutputFormat(args.format)), args.out)
    return EXIT_OK


def cmd_fit(args):
    """Fit a single family and print its full block."""
    family = parse_family(args.family)
    dataset = resolve_dataset(args.dataset)
    table = build_comparison(dataset, [family], build_simplex_config(args.config))
    record = table_record(table)
    emit(render_record(record, OutputFormat(args.format)), args.out)
    return EXIT_OK if _all_converged([record]) else EXIT_NOT_CONVERGED


def cmd_compare(args):
    """Fit several families on one dataset and print the comparison."""
    families = parse_families(args.families)
    dataset = resolve_dataset(args.dataset)
    table = build_comparison(dataset, families, build_simplex_config(args.config), args.jobs)
    record = table_record(table)
    emit(render_record(record, OutputFormat(args.format)), args.out)
    return EXIT_OK if _all_converged([record]) else EXIT_NOT_CONVERGED


def cmd_sweep(args):
    """Compare on every embedded dataset."""
    families = parse_families(args.families)
    config = build_simplex_config(args.config)
    fmt = OutputFormat(args.format)
    records = []
    for dataset_id, _, _ in embedded_catalog():
        dataset = load_embedded(dataset_id)
        records.append(table_record(build_comparison(dataset, families, config, args.jobs)))

    if fmt is OutputFormat.JSON:
        text = json.dumps(records, indent=2) + "\n"
    elif fmt is OutputFormat.CSV:
        text = pd.concat([records_frame(r) for r in records], ignore_index=True).to_csv(index=False)
    else:
        text = "\n".join(render_markdown(r) for r in records)
    emit(text, args.out)
    return EXIT_OK if _all_converged(records) else EXIT_NOT_CONVERGED


def cmd_plot(args):
    """Write the plot point set as CSV and a standalone SVG."""
    kind = PlotKind(args.kind)
    families = parse_families(args.families)
    dataset = resolve_dataset(args.dataset)
    config = build_simplex_config(args.config)

    specs = []
    converged = True
    for family in families:
        fit = fit_mle(family, dataset, config)
        converged = converged and fit.converged
        specs.append(fit.spec)
    series = plot_series(kind, dataset, specs)

    target = Path(args.out or f"{dataset.name}_{kind.value}.svg")
    csv_path = target.with_suffix(".csv")
    svg_path = target.with_suffix(".svg")
    series_frame(series).to_csv(csv_path, index=False)
    render_svg(series, svg_path, title=f"{dataset.name}: {kind.value}")
    sys.stdout.write(f"{csv_path}\n{svg_path}\n")
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def build_parser():
    """Argument parser with one sub-command per verb."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.MARKDOWN.value)
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--config", help="YAML file with simplex settings")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--seedless", action="store_true",
                        help="deterministic mode (the only mode; accepted for compatibility)")

    parser = argparse.ArgumentParser(prog="unitfit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list-datasets", parents=[common], help="list the embedded datasets")
    p.set_defaults(handler=cmd_list_datasets)

    p = sub.add_parser("describe", parents=[common], help="descriptive statistics of a dataset")
    p.add_argument("dataset", help="embedded id, embedded name or file path")
    p.set_defaults(handler=cmd_describe)

    p = sub.add_parser("summary", parents=[common], help="descriptive statistics of all embedded datasets")
    p.set_defaults(handler=cmd_summary)

    p = sub.add_parser("fit", parents=[common], help="fit one family")
    p.add_argument("dataset")
    p.add_argument("--family", required=True, help=", ".join(f.value for f in Family))
    p.set_defaults(handler=cmd_fit)

    for name, handler, helptext in (
        ("compare", cmd_compare, "fit and compare several families"),
        ("sweep", cmd_sweep, "compare on every embedded dataset"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "compare":
            p.add_argument("dataset")
        p.add_argument("--families", help="comma-separated families (default: all seven)")
        p.add_argument("--jobs", type=int, default=1, help="families fitted concurrently")
        p.set_defaults(handler=handler)

    p = sub.add_parser("plot", parents=[common], help="emit plot data (CSV) and an SVG")
    p.add_argument("dataset")
    p.add_argument("--kind", choices=[k.value for k in PlotKind], required=True)
    p.add_argument("--families", help="comma-separated families (default: all seven)")
    p.set_defaults(handler=cmd_plot)

    return parser


def main(argv=None):
    """Main application function; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    configure_logging(args.verbose)

    try:
        return args.handler(args)
    except (DatasetNotFoundError, UnknownFamilyError, ConfigError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except (DataParseError, DomainError) as e:
        logger.error("%s", e)
        return EXIT_DATA
    except OSError as e:
        logger.error("I/O failure: %s", e)
        logger.debug("traceback: %s", traceback.format_exc())
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
