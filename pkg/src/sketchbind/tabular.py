"""Tabular data ingestion.

A CSV file is deconstructed into an ordered :class:`Dataset`: one
:class:`Dimension` per column (typed categorical or quantitative) and one
addressable record per row. Order is the file order and never changes after
load; datasets are immutable and safe to share.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import (
    DuplicateColumn,
    EmptyInput,
    IndexOutOfRange,
    MissingNumeric,
    RaggedRows,
    UnknownDimension,
)

CATEGORICAL = "categorical"
QUANTITATIVE = "quantitative"

Value = Union[str, float]

# Optional sign, digits, optional fraction, optional exponent. No thousands
# separators, no leading/trailing whitespace, no bare ".5" or "5.".
_NUMBER_RE = re.compile(r"[+-]?[0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?\Z")


@dataclass(frozen=True)
class Dimension:
    """One column: ordered values, all of a single inferred type."""

    name: str
    dtype: str  # CATEGORICAL | QUANTITATIVE
    values: tuple[Value, ...]


@dataclass(frozen=True)
class Record:
    """One row: attribute/value pairs in dimension order."""

    index: int
    pairs: tuple[tuple[str, Value], ...]


@dataclass(frozen=True)
class Dataset:
    name: str
    dimensions: tuple[Dimension, ...]
    record_count: int


def _parses_as_finite_number(text: str) -> bool:
    return bool(_NUMBER_RE.match(text)) and math.isfinite(float(text))


def infer_dtype(values: Sequence[str]) -> str:
    """Infer a column type from raw cell text.

    Quantitative iff there is at least one non-empty cell and every non-empty
    cell parses as a finite decimal number; anything else (including an empty
    list or an all-empty column) is categorical. Only the multiset of values
    matters, never their order.
    """
    non_empty = [v for v in values if v != ""]
    if not non_empty:
        return CATEGORICAL
    if all(_parses_as_finite_number(v) for v in non_empty):
        return QUANTITATIVE
    return CATEGORICAL


def load_csv(data: bytes | str, name: str) -> Dataset:
    """Parse UTF-8, comma-separated, double-quote-escaped CSV with a header row.

    Row numbers in error messages are 1-based over parsed CSV rows, header
    included.
    """
    text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] == []:
        raise EmptyInput("no header row")
    header, data_rows = rows[0], rows[1:]

    seen = set()
    for column in header:
        if column in seen:
            raise DuplicateColumn(f"duplicate column name {column!r}")
        seen.add(column)

    for i, row in enumerate(data_rows):
        if len(row) != len(header):
            raise RaggedRows(
                f"row {i + 2} has {len(row)} cells, header has {len(header)}"
            )

    columns = list(zip(*data_rows)) if data_rows else [() for _ in header]
    dimensions = []
    for column_name, raw in zip(header, columns):
        dtype = infer_dtype(raw)
        if dtype == QUANTITATIVE:
            for i, cell in enumerate(raw):
                if cell == "":
                    raise MissingNumeric(
                        f"empty cell in quantitative column {column_name!r} (row {i + 2})"
                    )
            values: tuple[Value, ...] = tuple(float(cell) for cell in raw)
        else:
            values = tuple(raw)
        dimensions.append(Dimension(name=column_name, dtype=dtype, values=values))

    return Dataset(name=name, dimensions=tuple(dimensions), record_count=len(data_rows))


def get_dimension(dataset: Dataset, name: str) -> Dimension:
    for dimension in dataset.dimensions:
        if dimension.name == name:
            return dimension
    raise UnknownDimension(f"dataset {dataset.name!r} has no dimension {name!r}")


def get_record(dataset: Dataset, index: int) -> Record:
    if not 0 <= index < dataset.record_count:
        raise IndexOutOfRange(
            f"record {index} out of range for dataset {dataset.name!r} "
            f"({dataset.record_count} records)"
        )
    pairs = tuple((d.name, d.values[index]) for d in dataset.dimensions)
    return Record(index=index, pairs=pairs)
