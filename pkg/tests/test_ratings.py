"""Sensitivity store: latest-wins ratings, averages, persistence."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from exportlens.errors import UnknownElementError, ValidationError
from exportlens.ratings import SensitivityStore


def ids(n):
    return [f"{i:064x}" for i in range(n)]


class TestRate:
    def test_latest_wins(self):
        store = SensitivityStore()
        store.rate("e1", 0.5)
        store.rate("e1", 0.8)
        assert store.get("e1").value == 0.8
        assert len(store) == 1

    def test_out_of_range_rejected(self):
        store = SensitivityStore()
        with pytest.raises(ValidationError):
            store.rate("e1", 1.3)
        with pytest.raises(ValidationError):
            store.rate("e1", -0.1)

    def test_bounds_inclusive(self):
        store = SensitivityStore()
        store.rate("lo", 0.0)
        store.rate("hi", 1.0)
        assert store.average() == 0.5

    def test_unknown_element_rejected(self):
        store = SensitivityStore()
        with pytest.raises(UnknownElementError):
            store.rate("ghost", 0.5, known_ids={"real"})
        store.rate("real", 0.5, known_ids={"real"})


class TestAverage:
    def test_none_when_unrated(self):
        assert SensitivityStore().average() is None

    def test_symmetric_pair(self):
        store = SensitivityStore()
        store.rate("a", 0.2)
        store.rate("b", 0.8)
        assert store.average() == pytest.approx(0.5, abs=1e-15)

    def test_matches_naive_mean(self):
        rng = random.Random(12)
        store = SensitivityStore()
        values = []
        for eid in ids(100):
            v = rng.random()
            values.append(v)
            store.rate(eid, v)
        naive = sum(values) / len(values)
        assert abs(store.average() - naive) <= 1e-12

    def test_selection_restricted(self):
        store = SensitivityStore()
        store.rate("a", 0.1)
        store.rate("b", 0.9)
        assert store.average(["a"]) == 0.1
        assert store.average(["a", "unrated"]) == 0.1
        assert store.average(["unrated"]) is None

    @given(st.lists(st.floats(min_value=0, max_value=1), min_size=1, max_size=200))
    @settings(max_examples=100)
    def test_average_within_min_max(self, values):
        store = SensitivityStore()
        for i, v in enumerate(values):
            store.rate(f"e{i}", v)
        avg = store.average()
        assert min(values) - 1e-12 <= avg <= max(values) + 1e-12


class TestPersistence:
    def test_round_trip_exact(self, tmp_path):
        path = tmp_path / "ratings.json"
        store = SensitivityStore(path)
        rng = random.Random(5)
        for eid in ids(30):
            store.rate(eid, rng.random())
        store.save()

        reloaded = SensitivityStore(path)
        assert len(reloaded) == 30
        assert [(r.element_id, r.value, r.rated_at) for r in reloaded.ratings()] == [
            (r.element_id, r.value, r.rated_at) for r in store.ratings()
        ]

    def test_restart_keeps_rating(self, tmp_path):
        path = tmp_path / "r.json"
        first = SensitivityStore(path)
        first.rate("e1", 0.66)
        first.save()
        del first
        second = SensitivityStore(path)
        assert second.get("e1").value == 0.66

    def test_file_sorted_by_element_id(self, tmp_path):
        import json

        path = tmp_path / "r.json"
        store = SensitivityStore(path)
        store.rate("zzz", 0.2)
        store.rate("aaa", 0.4)
        store.save()
        doc = json.loads(path.read_text())
        assert [entry["element_id"] for entry in doc] == ["aaa", "zzz"]

    def test_atomic_write_leaves_no_temp(self, tmp_path):
        path = tmp_path / "r.json"
        store = SensitivityStore(path)
        store.rate("e", 0.5)
        store.save()
        assert [p.name for p in tmp_path.iterdir()] == ["r.json"]

    def test_bad_file_rejected(self, tmp_path):
        path = tmp_path / "r.json"
        path.write_text("{not json")
        with pytest.raises(ValidationError):
            SensitivityStore(path)

    def test_out_of_range_value_in_file_rejected(self, tmp_path):
        path = tmp_path / "r.json"
        path.write_text('[{"element_id": "e", "value": 7, "rated_at": "2024-01-01T00:00:00Z"}]')
        with pytest.raises(ValidationError):
            SensitivityStore(path)

    def test_ratings_survive_reparse(self, tmp_path, service_archives):
        # Stable element ids are the contract that makes this work.
        from exportlens.parsers import ingest_archive

        data, _ = service_archives["facebook"]
        ds1, _ = ingest_archive(data, "a.zip")
        target = ds1.elements[0].id
        path = tmp_path / "r.json"
        store = SensitivityStore(path)
        store.rate(target, 0.75, known_ids={el.id for el in ds1.elements})
        store.save()

        ds2, _ = ingest_archive(data, "a.zip")
        reloaded = SensitivityStore(path)
        assert reloaded.get(ds2.elements[0].id).value == 0.75
