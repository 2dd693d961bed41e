"""Read-only analytics over datasets: merging, filtering, timeline projection.

Everything here is a pure function over immutable datasets, so callers may
run queries concurrently without coordination. The timeline projection
splits one-dimensional time into calendar date (x) and time of day (y); the
daily cycle is what makes sleep, work and holiday patterns visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone, date

from .errors import ConflictError, ValidationError
from .model import Category, DataElement, Dataset, FileElement

SECONDS_PER_DAY = 86400
_EPOCH = date(1970, 1, 1).toordinal()


@dataclass(frozen=True)
class Selection:
    """Filter state shared by every view.

    Empty sets mean "no constraint". Elements without a timestamp fail any
    time_range constraint; they still appear in unconstrained selections.
    """

    dataset_ids: frozenset[str] = frozenset()
    categories: frozenset[Category] = frozenset()
    time_range: tuple[datetime, datetime] | None = None
    query: str | None = None

    def __post_init__(self):
        if self.time_range is not None and self.time_range[0] > self.time_range[1]:
            raise ValidationError("time_range start after end", field="time_range")

    def matches(self, el: DataElement) -> bool:
        if self.dataset_ids and el.dataset_id not in self.dataset_ids:
            return False
        if self.categories and el.category not in self.categories:
            return False
        if self.time_range is not None:
            if el.time is None:
                return False
            if not (self.time_range[0] <= el.time <= self.time_range[1]):
                return False
        if self.query:
            needle = self.query.casefold()
            if needle not in el.text.casefold() and needle not in el.subcategory.casefold():
                return False
        return True


@dataclass(frozen=True)
class DataView:
    """Merged, provenance-preserving view over one or more datasets."""

    datasets: tuple[Dataset, ...]
    elements: tuple[DataElement, ...]
    files: tuple[FileElement, ...]


def merge(datasets: list[Dataset] | tuple[Dataset, ...]) -> DataView:
    """Combine datasets into one view; element order is (time, id), nulls last."""
    seen = set()
    for ds in datasets:
        if ds.dataset_id in seen:
            raise ConflictError(f"duplicate dataset_id {ds.dataset_id}")
        seen.add(ds.dataset_id)
    elements = sorted(
        (el for ds in datasets for el in ds.elements),
        key=lambda el: (el.time is None, el.time or datetime.min.replace(tzinfo=timezone.utc), el.id),
    )
    files = tuple(f for ds in datasets for f in ds.files)
    return DataView(datasets=tuple(datasets), elements=tuple(elements), files=files)


def apply_selection(view: DataView, selection: Selection) -> tuple[DataElement, ...]:
    return tuple(el for el in view.elements if selection.matches(el))


@dataclass(frozen=True)
class TimePoint:
    """One element positioned on the date x time-of-day plane (UTC)."""

    element: DataElement
    x: int  # whole days since 1970-01-01
    y: int  # seconds since midnight, [0, 86400)


def project_time(moment: datetime) -> tuple[int, int]:
    utc = moment.astimezone(timezone.utc)
    x = utc.date().toordinal() - _EPOCH
    y = utc.hour * 3600 + utc.minute * 60 + utc.second
    return x, y


def timeline_project(elements) -> tuple[TimePoint, ...]:
    """One TimePoint per timestamped element; null-time elements vanish."""
    points = []
    for el in elements:
        if el.time is None:
            continue
        x, y = project_time(el.time)
        points.append(TimePoint(element=el, x=x, y=y))
    return tuple(points)


def partition_by_dataset(
    view: DataView, selection: Selection | None = None
) -> list[tuple[Dataset, tuple[TimePoint, ...]]]:
    """Per-dataset timelines in ingestion order; together they cover exactly
    the merged projection."""
    selection = selection or Selection()
    out = []
    for ds in view.datasets:
        selected = (el for el in ds.elements if selection.matches(el))
        out.append((ds, timeline_project(selected)))
    return out


@dataclass
class Stats:
    category_counts: dict[Category, int] = field(default_factory=dict)
    service_counts: dict[str, int] = field(default_factory=dict)
    file_counts: dict[tuple[str, str], int] = field(default_factory=dict)
    total_size_bytes: int = 0
    time_extent: tuple[datetime, datetime] | None = None
    element_count: int = 0


def compute_stats(view: DataView, selection: Selection | None = None) -> Stats:
    """Counts over the selected elements.

    total_size_bytes inventories the files of the selected datasets (file
    elements have no time or text, so only the dataset constraint applies
    to them).
    """
    selection = selection or Selection()
    stats = Stats(category_counts={cat: 0 for cat in Category})
    service_by_id = {ds.dataset_id: ds.service for ds in view.datasets}

    times = []
    for el in view.elements:
        if not selection.matches(el):
            continue
        stats.element_count += 1
        stats.category_counts[el.category] += 1
        service = service_by_id.get(el.dataset_id, el.dataset_id)
        stats.service_counts[service] = stats.service_counts.get(service, 0) + 1
        key = (el.dataset_id, el.source_file)
        stats.file_counts[key] = stats.file_counts.get(key, 0) + 1
        if el.time is not None:
            times.append(el.time)

    for f in view.files:
        if selection.dataset_ids and f.dataset_id not in selection.dataset_ids:
            continue
        stats.total_size_bytes += f.size_bytes

    if times:
        stats.time_extent = (min(times), max(times))
    return stats
