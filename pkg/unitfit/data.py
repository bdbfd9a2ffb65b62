"""
Datasets: the embedded 14-dataset corpus, external file ingestion and
descriptive statistics.
"""
import logging
import re
from dataclasses import dataclass, asdict
from pathlib import Path

import numpy as np
import pandas as pd
from scipy import stats

from unitfit.constants.config import DESCRIBE_HEADERS
from unitfit.constants.datasets import EMBEDDED_DATASETS
from unitfit.exceptions import DataParseError, DatasetNotFoundError, DomainError
from unitfit.utils.helpers import parse_token

logger = logging.getLogger(__name__)

TOKEN_SEPARATORS = re.compile(r"[\s,;]+")


@dataclass(frozen=True)
class Dataset:
    """Named vector of observations strictly inside (0, 1)."""

    name: str
    values: tuple
    id: int = None

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise DomainError(f"dataset {self.name!r} is empty")
        for position, value in enumerate(values, start=1):
            if not 0 < value < 1:
                raise DomainError(
                    f"dataset {self.name!r}: value {value} at position {position} is outside (0, 1)"
                )
        object.__setattr__(self, "values", values)

    @property
    def n(self):
        return len(self.values)

    @property
    def array(self):
        return np.asarray(self.values, dtype=float)

    @property
    def label(self):
        return f"{self.id} ({self.name})" if self.id is not None else self.name


@dataclass
class DescriptiveStats:
    """Summary statistics of one sample."""

    min: float
    mean: float
    std: float
    skewness: float
    kurtosis: float
    q25: float
    q50: float
    q75: float
    max: float

    def as_dict(self):
        return asdict(self)


def parse_values(text, name="external", dataset_id=None):
    """Parse whitespace/comma/semicolon separated values; '#' lines are comments."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DataParseError(text[e.start:e.end], e.start) from e

    values = []
    position = 0
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        for token in TOKEN_SEPARATORS.split(line):
            if not token:
                continue
            position += 1
            value, error = parse_token(token)
            if error == "parse":
                raise DataParseError(token, position)
            if error == "domain":
                raise DomainError(f"value {token!r} at position {position} is outside (0, 1)")
            values.append(value)
    return Dataset(name=name, values=values, id=dataset_id)


def serialize(dataset):
    """Text form of a dataset that parse_values reads back unchanged."""
    return "\n".join(repr(v) for v in dataset.values) + "\n"


def load_embedded(dataset_id):
    """One of the 14 embedded datasets, by id."""
    try:
        name, raw = EMBEDDED_DATASETS[int(dataset_id)]
    except (KeyError, ValueError, TypeError):
        raise DatasetNotFoundError(f"no embedded dataset with id {dataset_id!r}") from None
    return parse_values(raw, name=name, dataset_id=int(dataset_id))


def embedded_catalog():
    """(id, name, n) for every embedded dataset."""
    datasets = [load_embedded(i) for i in sorted(EMBEDDED_DATASETS)]
    return [(d.id, d.name, d.n) for d in datasets]


def load_file(path):
    """Read a dataset from a plain-text file."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise DatasetNotFoundError(f"cannot read dataset file {str(path)!r}: {e}") from e
    return parse_values(raw, name=path.stem)


def resolve_dataset(ref):
    """Resolve an embedded id, an embedded name, or a file path."""
    ref = str(ref).strip()
    if ref.isdigit():
        return load_embedded(int(ref))
    for dataset_id, (name, _) in EMBEDDED_DATASETS.items():
        if ref == name:
            return load_embedded(dataset_id)
    logger.debug("dataset reference %r treated as a file path", ref)
    return load_file(ref)


def describe(data):
    """Summary statistics: n-1 std, bias-corrected skewness and (non-excess) kurtosis, Hazen quartiles."""
    y = np.asarray(getattr(data, "values", data), dtype=float)
    if y.size < 2:
        raise DomainError("describe needs at least two observations")
    if np.all(y == y[0]):
        raise DomainError("describe needs positive variance; all values are equal")
    # Hazen positions interpolate the sorted sample at p*n + 0.5
    q25, q50, q75 = np.quantile(y, [0.25, 0.5, 0.75], method="hazen")
    return DescriptiveStats(
        min=float(y.min()),
        mean=float(y.mean()),
        std=float(y.std(ddof=1)),
        skewness=float(stats.skew(y, bias=False)),
        kurtosis=float(stats.kurtosis(y, fisher=False, bias=False)),
        q25=float(q25),
        q50=float(q50),
        q75=float(q75),
        max=float(y.max()),
    )


def describe_frame(datasets):
    """Summary DataFrame, one row per dataset."""
    rows = []
    for dataset in datasets:
        row = {"dataset": dataset.label}
        row.update(zip(DESCRIBE_HEADERS, describe(dataset).as_dict().values()))
        rows.append(row)
    return pd.DataFrame(rows, columns=["dataset"] + DESCRIBE_HEADERS)


def corpus_summary():
    """Descriptive statistics of the whole embedded corpus."""
    return describe_frame(load_embedded(i) for i in sorted(EMBEDDED_DATASETS))
