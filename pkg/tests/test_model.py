"""Unified scheme: classification, ids, canonical document round-trips."""

import json
from datetime import datetime, timezone

import pytest
from hypothesis import given, strategies as st

from exportlens.errors import SchemaVersionError, ValidationError
from exportlens.model import (
    CATEGORY_COLORS,
    Category,
    DataElement,
    Dataset,
    FileCategory,
    FileElement,
    classify_file,
    dataset_to_document,
    dumps_unified,
    element_id,
    read_unified,
    validate_dataset,
    write_unified,
)

UTC = timezone.utc


class TestClassifyFile:
    def test_spec_table(self):
        assert classify_file("messages.json") == FileCategory.TEXT
        assert classify_file("noextension") == FileCategory.OTHER
        assert classify_file("Photo.JPG") == FileCategory.PICTURE

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("a.jpeg", FileCategory.PICTURE),
            ("clip.MOV", FileCategory.VIDEO),
            ("song.m4a", FileCategory.AUDIO),
            ("contacts.vcf", FileCategory.TEXT),
            ("calendar.ics", FileCategory.TEXT),
            ("page.html", FileCategory.DOCUMENT),
            ("cv.docx", FileCategory.DOCUMENT),
            ("nested.zip", FileCategory.OTHER),
            ("workout.tcx", FileCategory.OTHER),
            (".bashrc", FileCategory.OTHER),
            ("archive.tar.gz", FileCategory.OTHER),
        ],
    )
    def test_extension_table(self, name, expected):
        assert classify_file(name) == expected

    def test_case_fold_matches_lowercase_oracle(self):
        # Oracle: classification of any cased variant equals the lowercased one.
        for name in ("PIC.PNG", "pic.Png", "MOVIE.WebM", "Data.CSV"):
            assert classify_file(name) == classify_file(name.lower())

    def test_empty_name_rejected(self):
        with pytest.raises(ValueError):
            classify_file("")


class TestElementId:
    def test_deterministic(self):
        a = element_id("facebook", "f.json", 3, "hello")
        b = element_id("facebook", "f.json", 3, "hello")
        assert a == b

    def test_index_distinguishes(self):
        assert element_id("x", "f", 0, "hi") != element_id("x", "f", 1, "hi")

    def test_golden(self):
        # Frozen from the independent sha256-over-NUL-joined-fields oracle.
        assert (
            element_id("facebook", "messages/inbox/a.json", 0, "hi")
            == "592e98edfe77236bcc217f1f8751cc74c5f8f4e8bb1ff597191d41e891271858"
        )

    def test_shape(self):
        value = element_id("s", "p", 0, "t")
        assert len(value) == 64 and value == value.lower()
        int(value, 16)

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            element_id("s", "p", -1, "t")


def _dataset(elements_spec=((None, "hello"),), service="facebook"):
    """Small dataset with one data file plus one white media file."""
    path = "messages/inbox/a/messages.json"
    elements = []
    for i, (time, text) in enumerate(elements_spec):
        elements.append(
            DataElement(
                id=element_id(service, path, i, text),
                time=time,
                text=text,
                category=Category.MESSAGES,
                subcategory="Chat with A",
                source_file=path,
                dataset_id="d1",
            )
        )
    files = [
        FileElement("messages.json", "messages/inbox/a/", 5242880, FileCategory.TEXT,
                    Category.MESSAGES if elements else None, len(elements), "d1"),
        FileElement("photo.jpg", "media/", 1000, FileCategory.PICTURE, None, 0, "d1"),
    ]
    return Dataset.build("d1", service, datetime(2024, 5, 1, 8, 0, 0, tzinfo=UTC), files, elements)


class TestUnifiedDocument:
    def test_round_trip_identity(self):
        ds = _dataset(
            [
                (datetime(2019, 1, 1, 12, 34, 56, tzinfo=UTC), "Person says: \"Hello World\""),
                (None, "no time"),
                (datetime(2011, 7, 2, 23, 59, 59, tzinfo=UTC), "older"),
            ]
        )
        blob = dumps_unified(ds)
        back = read_unified(blob)
        assert back == ds
        assert dumps_unified(back) == blob

    def test_time_serialization_form(self):
        ds = _dataset([(datetime(2019, 1, 1, 12, 34, 56, tzinfo=UTC), "x")])
        doc = json.loads(dumps_unified(ds))
        assert doc["elements"][0]["time"] == "2019-01-01T12:34:56Z"

    def test_empty_dataset_document(self):
        ds = Dataset.build("d0", "twitter", datetime(2024, 1, 1, tzinfo=UTC), [], [])
        doc = json.loads(dumps_unified(ds))
        assert doc["schema_version"] == 1
        assert doc["files"] == [] and doc["elements"] == []

    def test_write_twice_byte_identical(self, tmp_path):
        ds = _dataset()
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        write_unified(ds, str(p1))
        write_unified(ds, str(p2))
        assert p1.read_bytes() == p2.read_bytes()

    def test_key_order_and_whitespace(self):
        blob = dumps_unified(_dataset())
        text = blob.decode("utf-8")
        assert text.startswith('{"schema_version":1,"service":"facebook","dataset_id":')
        assert ": " not in text.split('says')[0]  # no insignificant whitespace

    def test_arrays_sorted(self):
        t1 = datetime(2020, 1, 1, tzinfo=UTC)
        t0 = datetime(2010, 1, 1, tzinfo=UTC)
        ds = _dataset([(t1, "later"), (None, "never"), (t0, "earlier")])
        doc = json.loads(dumps_unified(ds))
        times = [e["time"] for e in doc["elements"]]
        assert times == ["2010-01-01T00:00:00Z", "2020-01-01T00:00:00Z", None]
        files = [f["folder"] + f["name"] for f in doc["files"]]
        assert files == sorted(files)

    def test_unknown_schema_version(self):
        doc = json.loads(dumps_unified(_dataset()))
        doc["schema_version"] = 2
        with pytest.raises(SchemaVersionError):
            read_unified(json.dumps(doc).encode())

    def test_missing_source_file_rejected(self):
        doc = json.loads(dumps_unified(_dataset()))
        doc["elements"][0]["source_file"] = "nowhere.json"
        with pytest.raises(ValidationError):
            read_unified(json.dumps(doc).encode())

    def test_hand_written_minimal_document(self):
        # Constructed by hand per the schema; one element, counts must line up.
        doc = {
            "schema_version": 1,
            "service": "twitter",
            "dataset_id": "tw-1",
            "ingested_at": "2024-06-01T00:00:00Z",
            "files": [
                {"name": "tweet.js", "folder": "data/", "size_bytes": 10,
                 "file_category": "Text", "data_category": "PostsAndComments",
                 "element_count": 1}
            ],
            "elements": [
                {"id": "00" * 32, "time": None, "text": "Tweeted: \"hi\"",
                 "category": "PostsAndComments", "subcategory": "Tweets",
                 "source_file": "data/tweet.js"}
            ],
        }
        ds = read_unified(json.dumps(doc).encode())
        assert ds.files_by_path["data/tweet.js"].element_count == 1
        assert ds.time_extent is None

    def test_count_mismatch_rejected(self):
        doc = json.loads(dumps_unified(_dataset()))
        messages_entry = next(f for f in doc["files"] if f["name"] == "messages.json")
        messages_entry["element_count"] = 5
        with pytest.raises(ValidationError) as err:
            read_unified(json.dumps(doc).encode())
        assert err.value.field == "element_count"

    def test_category_color_bijection(self):
        assert set(CATEGORY_COLORS) == set(Category)
        assert len(set(CATEGORY_COLORS.values())) == len(Category)


class TestDatasetInvariants:
    def test_element_count_sums(self, service_datasets):
        for dataset, _, _ in service_datasets.values():
            assert sum(f.element_count for f in dataset.files) == len(dataset.elements)
            validate_dataset(dataset)

    def test_white_files_have_no_category(self, service_datasets):
        for dataset, _, _ in service_datasets.values():
            for f in dataset.files:
                assert (f.element_count > 0) == (f.data_category is not None)

    def test_time_extent_is_exact_min_max(self, service_datasets):
        for dataset, _, _ in service_datasets.values():
            times = [el.time for el in dataset.elements if el.time is not None]
            if times:
                assert dataset.time_extent == (min(times), max(times))
            else:
                assert dataset.time_extent is None

    @given(st.text(min_size=1, max_size=40))
    def test_id_stability_property(self, text):
        assert element_id("svc", "p", 5, text) == element_id("svc", "p", 5, text)

    def test_document_key_order_is_canonical(self):
        doc = dataset_to_document(_dataset())
        assert list(doc) == ["schema_version", "service", "dataset_id", "ingested_at",
                             "files", "elements"]
        assert list(doc["files"][0]) == ["name", "folder", "size_bytes", "file_category",
                                         "data_category", "element_count"]
        assert list(doc["elements"][0]) == ["id", "time", "text", "category", "subcategory",
                                            "source_file"]
