"""Process-capability front end: spec limits to worst-case defect rates.

Given specification limits and the process mean and standard deviation,
the distances u = (mean - lsl)/sd and v = (usl - mean)/sd turn the
nonconforming fraction P(X < lsl or X > usl) into the standardized tail
query, and each distribution class yields its worst-case fraction and
the corresponding parts-per-million rate.
"""

import csv
from dataclasses import dataclass
from math import isfinite

from .bounds import DistributionClass, IntervalSpec, TailBound, bound
from .errors import DataError, InvalidInterval, OutOfTheoremRange

__all__ = ["CapabilityInput", "CapabilityRow", "capability_table", "read_csv_column", "from_samples"]

# Classes meaningful for a two-sided capability query, in report order.
CAPABILITY_CLASSES = (
    DistributionClass.ALL,
    DistributionClass.SYMMETRIC,
    DistributionClass.UNIMODAL,
    DistributionClass.UNIMODAL_MODE_EQ_MEAN,
    DistributionClass.SYMMETRIC_UNIMODAL,
)


@dataclass(frozen=True)
class CapabilityInput:
    """Spec limits plus process mean/sd, all in data units."""

    lsl: float
    usl: float
    mean: float
    sd: float
    n: int | None = None

    def __post_init__(self):
        for name in ("lsl", "usl", "mean", "sd"):
            if not isfinite(getattr(self, name)):
                raise InvalidInterval(f"{name} must be a finite real")
        if not self.lsl < self.mean < self.usl:
            raise InvalidInterval(
                f"the mean must lie strictly between the limits: "
                f"lsl={self.lsl!r}, mean={self.mean!r}, usl={self.usl!r}"
            )
        if not self.sd > 0.0:
            raise InvalidInterval(f"sd must be positive, got {self.sd!r}")

    @property
    def u(self) -> float:
        return (self.mean - self.lsl) / self.sd

    @property
    def v(self) -> float:
        return (self.usl - self.mean) / self.sd


@dataclass(frozen=True)
class CapabilityRow:
    dist_class: DistributionClass
    tail: TailBound | None  # None when out of the theorem's range

    @property
    def ppm(self) -> int | None:
        if self.tail is None:
            return None
        return round(1e6 * self.tail.value)


def capability_table(inp: CapabilityInput) -> list[CapabilityRow]:
    """Worst-case nonconforming fraction per class, or None if out of range."""
    interval = IntervalSpec.two_sided(inp.u, inp.v)
    rows = []
    for dist_class in CAPABILITY_CLASSES:
        try:
            rows.append(CapabilityRow(dist_class, bound(dist_class, interval)))
        except OutOfTheoremRange:
            rows.append(CapabilityRow(dist_class, None))
    return rows


def read_csv_column(path: str, column: str) -> list[float]:
    """Read one numeric column from a headered CSV file.

    UTF-8, '.' decimal separator.  A missing header, a missing column,
    or any non-numeric cell is an error carrying the 1-based line
    number; silent skipping would corrupt an SPC analysis.
    """
    try:
        handle = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open {path!r}: {exc}") from exc
    with handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("empty file: a header row is required", line=1) from None
        names = [h.strip() for h in header]
        if column not in names:
            raise DataError(f"column {column!r} not found in header {names}", line=1)
        idx = names.index(column)
        values = []
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if idx >= len(row):
                raise DataError(f"row has no {column!r} cell", line=line_no)
            cell = row[idx].strip()
            try:
                values.append(float(cell))
            except ValueError:
                raise DataError(
                    f"non-numeric value {cell!r} in column {column!r}", line=line_no
                ) from None
    return values


def from_samples(values, lsl: float, usl: float) -> CapabilityInput:
    """Capability input from raw samples; sd uses the n-1 divisor."""
    n = len(values)
    if n < 2:
        raise InvalidInterval(f"need at least 2 data rows to estimate sd, got {n}")
    mean = sum(values) / n
    ss = sum((x - mean) ** 2 for x in values)
    sd = (ss / (n - 1)) ** 0.5
    if not sd > 0.0:
        raise InvalidInterval("sample standard deviation is zero")
    return CapabilityInput(lsl=lsl, usl=usl, mean=mean, sd=sd, n=n)
