"""Query engine: selection oracle equivalence, projection, partitions, stats."""

import random
from datetime import datetime, timedelta, timezone

import pytest

from exportlens.errors import ConflictError, ValidationError
from exportlens.model import Category
from exportlens.query import (
    Selection,
    apply_selection,
    compute_stats,
    merge,
    partition_by_dataset,
    project_time,
    timeline_project,
)

UTC = timezone.utc


def naive_filter(elements, selection: Selection):
    """Independent full-scan reimplementation of the selection contract."""
    out = []
    for el in elements:
        if selection.dataset_ids and el.dataset_id not in selection.dataset_ids:
            continue
        if selection.categories and el.category not in selection.categories:
            continue
        if selection.time_range is not None:
            if el.time is None:
                continue
            lo, hi = selection.time_range
            if el.time < lo or el.time > hi:
                continue
        if selection.query:
            q = selection.query.casefold()
            if q not in el.text.casefold() and q not in el.subcategory.casefold():
                continue
        out.append(el)
    return out


@pytest.fixture(scope="module")
def merged_view(use_case_2):
    return merge([ds for ds, _ in use_case_2.values()])


def random_selection(rng: random.Random, view) -> Selection:
    dataset_ids = frozenset(
        rng.sample([ds.dataset_id for ds in view.datasets], rng.randint(0, len(view.datasets)))
    )
    categories = frozenset(rng.sample(list(Category), rng.randint(0, 4)))
    time_range = None
    if rng.random() < 0.5:
        base = datetime(2008 + rng.randint(0, 10), 1 + rng.randint(0, 11), 1, tzinfo=UTC)
        time_range = (base, base + timedelta(days=rng.randint(1, 2000)))
    query = None
    if rng.random() < 0.6:
        query = rng.choice(
            ["alice", "says", "coffee", "IP", "Chat", "zzz-no-hit", "CAFÉ", "photo", "at "]
        )
    return Selection(
        dataset_ids=dataset_ids, categories=categories, time_range=time_range, query=query
    )


class TestMerge:
    def test_identity_on_single(self, use_case_2):
        ds, _ = use_case_2["alice-facebook"]
        view = merge([ds])
        assert sorted(el.id for el in view.elements) == sorted(el.id for el in ds.elements)

    def test_count_is_sum(self, use_case_2):
        datasets = [ds for ds, _ in use_case_2.values()]
        view = merge(datasets)
        assert len(view.elements) == sum(len(ds.elements) for ds in datasets)
        assert len(view.files) == sum(len(ds.files) for ds in datasets)

    def test_duplicate_dataset_id_conflict(self, use_case_2):
        ds, _ = use_case_2["alice-google"]
        with pytest.raises(ConflictError):
            merge([ds, ds])

    def test_order_time_then_id_nulls_last(self, merged_view):
        elements = merged_view.elements
        for a, b in zip(elements, elements[1:]):
            if a.time is None:
                assert b.time is None
                assert a.id <= b.id
            elif b.time is not None:
                assert (a.time, a.id) <= (b.time, b.id)


class TestApplySelection:
    def test_empty_selection_returns_all(self, merged_view):
        assert len(apply_selection(merged_view, Selection())) == len(merged_view.elements)

    def test_matches_naive_oracle_randomized(self, merged_view):
        rng = random.Random(424242)
        for _ in range(120):
            selection = random_selection(rng, merged_view)
            fast = apply_selection(merged_view, selection)
            slow = naive_filter(merged_view.elements, selection)
            assert [el.id for el in fast] == [el.id for el in slow]

    def test_category_filter_matches_scan(self, merged_view):
        selection = Selection(categories=frozenset({Category.LOCATION}))
        got = apply_selection(merged_view, selection)
        want = [el for el in merged_view.elements if el.category == Category.LOCATION]
        assert [el.id for el in got] == [el.id for el in want]

    def test_search_case_insensitive(self, merged_view):
        lower = apply_selection(merged_view, Selection(query="says"))
        upper = apply_selection(merged_view, Selection(query="SAYS"))
        assert [el.id for el in lower] == [el.id for el in upper]
        assert lower

    def test_filtering_monotone(self, merged_view):
        rng = random.Random(99)
        for _ in range(60):
            selection = random_selection(rng, merged_view)
            base = apply_selection(merged_view, selection)
            narrowed = Selection(
                dataset_ids=selection.dataset_ids,
                categories=selection.categories or frozenset({Category.MESSAGES}),
                time_range=selection.time_range,
                query=selection.query,
            )
            assert len(apply_selection(merged_view, narrowed)) <= len(base) or (
                narrowed == selection
            )

    def test_null_time_fails_any_range(self, merged_view):
        wide = Selection(
            time_range=(datetime(1900, 1, 1, tzinfo=UTC), datetime(2100, 1, 1, tzinfo=UTC))
        )
        got = apply_selection(merged_view, wide)
        assert all(el.time is not None for el in got)

    def test_invalid_range_rejected(self):
        with pytest.raises(ValidationError):
            Selection(
                time_range=(datetime(2020, 1, 1, tzinfo=UTC), datetime(2010, 1, 1, tzinfo=UTC))
            )


class TestTimelineProjection:
    def test_midnight(self):
        x, y = project_time(datetime(2019, 1, 1, 0, 0, 0, tzinfo=UTC))
        assert y == 0

    def test_golden_time_of_day(self):
        # 12*3600 + 34*60 + 56 computed by hand.
        x, y = project_time(datetime(2019, 1, 1, 12, 34, 56, tzinfo=UTC))
        assert y == 45296
        assert x == (datetime(2019, 1, 1, tzinfo=UTC).date() - datetime(1970, 1, 1).date()).days

    def test_null_time_absent(self, merged_view):
        points = timeline_project(merged_view.elements)
        dated = [el for el in merged_view.elements if el.time is not None]
        assert len(points) == len(dated)

    def test_y_range_and_x_monotone(self, merged_view):
        points = timeline_project(merged_view.elements)
        assert all(0 <= p.y < 86400 for p in points)
        xs = [p.x for p in points]
        assert xs == sorted(xs)  # elements come pre-sorted by time

    def test_x_day_boundary(self):
        x0, _ = project_time(datetime(2019, 6, 1, 23, 59, 59, tzinfo=UTC))
        x1, y1 = project_time(datetime(2019, 6, 2, 0, 0, 0, tzinfo=UTC))
        assert x1 == x0 + 1 and y1 == 0


class TestPartition:
    def test_four_dataset_scenario(self, merged_view):
        parts = partition_by_dataset(merged_view)
        assert len(parts) == 4
        assert [ds.dataset_id for ds, _ in parts] == [
            ds.dataset_id for ds in merged_view.datasets
        ]

    def test_union_equals_merged_projection(self, merged_view):
        parts = partition_by_dataset(merged_view)
        union = sorted(p.element.id for _, points in parts for p in points)
        whole = sorted(p.element.id for p in timeline_project(merged_view.elements))
        assert union == whole

    def test_single_dataset_partition(self, use_case_2):
        ds, _ = use_case_2["bob-google"]
        view = merge([ds])
        parts = partition_by_dataset(view)
        assert len(parts) == 1
        assert len(parts[0][1]) == len(timeline_project(view.elements))

    def test_selection_respected(self, merged_view):
        selection = Selection(categories=frozenset({Category.MESSAGES}))
        parts = partition_by_dataset(merged_view, selection)
        for ds, points in parts:
            assert all(p.element.category == Category.MESSAGES for p in points)


class TestStats:
    def test_empty_selection_all_zero(self, merged_view):
        stats = compute_stats(merged_view, Selection(query="zzz-definitely-absent"))
        assert stats.element_count == 0
        assert all(v == 0 for v in stats.category_counts.values())
        assert stats.time_extent is None

    def test_counts_match_manifest(self, use_case_2):
        for name, (ds, manifest) in use_case_2.items():
            stats = compute_stats(merge([ds]))
            got = {cat.value: n for cat, n in stats.category_counts.items()}
            assert got == manifest["expected_counts"], name

    def test_additivity_over_merge(self, use_case_2):
        datasets = [ds for ds, _ in use_case_2.values()]
        whole = compute_stats(merge(datasets))
        parts = [compute_stats(merge([ds])) for ds in datasets]
        for cat in Category:
            assert whole.category_counts[cat] == sum(p.category_counts[cat] for p in parts)
        assert whole.element_count == sum(p.element_count for p in parts)
        assert whole.total_size_bytes == sum(p.total_size_bytes for p in parts)

    def test_per_file_counts_cover_selected_only(self, merged_view):
        selection = Selection(categories=frozenset({Category.SECURITY}))
        stats = compute_stats(merged_view, selection)
        assert sum(stats.file_counts.values()) == stats.element_count
        for (dataset_id, path), n in stats.file_counts.items():
            assert n > 0
