"""Unified data scheme: element types, category taxonomy, and the canonical
serialized document format.

Every export archive, regardless of originating service, is reduced to two
element types (files and data records) tagged with one of ten fixed
categories. All views, the CLI, and the HTTP service operate on this scheme
only; nothing downstream knows service-specific formats.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import cached_property
from typing import IO, Iterable

from .errors import SchemaVersionError, ValidationError

SCHEMA_VERSION = 1


class Category(str, enum.Enum):
    """Closed set of data categories. Declaration order is the display order
    used by every view and report."""

    ACCOUNT = "Account"
    ACTIVITY = "Activity"
    CONTACTS = "Contacts"
    LOCATION = "Location"
    MEDIA = "Media"
    MESSAGES = "Messages"
    POSTS_AND_COMMENTS = "PostsAndComments"
    SECURITY = "Security"
    SEARCH = "Search"
    OTHER = "Other"

    @property
    def label(self) -> str:
        return _CATEGORY_LABELS[self]


_CATEGORY_LABELS = {
    Category.ACCOUNT: "Account",
    Category.ACTIVITY: "Activity",
    Category.CONTACTS: "Contacts",
    Category.LOCATION: "Location",
    Category.MEDIA: "Media",
    Category.MESSAGES: "Messages",
    Category.POSTS_AND_COMMENTS: "Posts and Comments",
    Category.SECURITY: "Security",
    Category.SEARCH: "Search",
    Category.OTHER: "Other",
}

# One fixed color per category, identical in every view (SVG reports and the
# web UI both read this table). Messages is deliberately the rose tone,
# activity green, location orange: the hues large exports are dominated by.
CATEGORY_COLORS: dict[Category, str] = {
    Category.ACCOUNT: "#4c78a8",
    Category.ACTIVITY: "#59a14f",
    Category.CONTACTS: "#76b7b2",
    Category.LOCATION: "#f28e2b",
    Category.MEDIA: "#b07aa1",
    Category.MESSAGES: "#ff9da7",
    Category.POSTS_AND_COMMENTS: "#edc948",
    Category.SECURITY: "#e15759",
    Category.SEARCH: "#9c755f",
    Category.OTHER: "#bab0ac",
}

# Files without any data elements render white in the file overview.
NO_DATA_COLOR = "#ffffff"


class FileCategory(str, enum.Enum):
    PICTURE = "Picture"
    VIDEO = "Video"
    AUDIO = "Audio"
    TEXT = "Text"
    DOCUMENT = "Document"
    OTHER = "Other"


_EXTENSION_TABLE: dict[str, FileCategory] = {}
for _ext_list, _cat in [
    ("jpg jpeg png gif webp bmp svg", FileCategory.PICTURE),
    ("mp4 mov avi webm mkv", FileCategory.VIDEO),
    ("mp3 wav ogg m4a aac", FileCategory.AUDIO),
    ("json js csv txt vcf ics xml", FileCategory.TEXT),
    ("html pdf doc docx", FileCategory.DOCUMENT),
]:
    for _ext in _ext_list.split():
        _EXTENSION_TABLE[_ext] = _cat


def classify_file(file_name: str) -> FileCategory:
    """Map a file name to its FileCategory via the lowercase extension table.

    Unknown or missing extensions fall back to Other. Names consisting only
    of a leading dot ("hidden" files without extension) have no extension.
    """
    if not file_name:
        raise ValueError("file_name must be non-empty")
    stem, _, ext = file_name.rpartition(".")
    if not stem:  # no dot, or nothing before the only dot
        return FileCategory.OTHER
    return _EXTENSION_TABLE.get(ext.lower(), FileCategory.OTHER)


def element_id(service: str, source_path: str, index: int, text: str) -> str:
    """Stable identifier for one data element.

    SHA-256 over the four inputs with NUL separators, rendered as 64 lowercase
    hex characters. Identical inputs give identical ids across runs and
    platforms, which is what lets sensitivity ratings survive re-parsing the
    same archive.
    """
    if index < 0:
        raise ValueError("index must be >= 0")
    payload = "\x00".join((service, source_path, str(index), text))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class FileElement:
    """One file contained in an export archive."""

    file_name: str
    folder: str  # relative, trailing "/" when non-empty
    size_bytes: int
    file_category: FileCategory
    data_category: Category | None
    element_count: int
    dataset_id: str

    @property
    def path(self) -> str:
        return self.folder + self.file_name


@dataclass(frozen=True)
class DataElement:
    """One parsed event/record from a machine-readable file."""

    id: str
    time: datetime | None  # UTC, second precision
    text: str
    category: Category
    subcategory: str
    source_file: str  # folder + file_name of the owning FileElement
    dataset_id: str


def _element_sort_key(el: DataElement):
    # Chronological with null times last; id breaks ties deterministically.
    if el.time is None:
        return (1, datetime.max.replace(tzinfo=timezone.utc), el.id)
    return (0, el.time, el.id)


@dataclass(frozen=True)
class Dataset:
    """All elements parsed from one export archive of one service.

    Immutable after construction; safe to share across concurrent readers.
    Use :meth:`build` rather than the raw constructor so ordering and
    time_extent invariants hold.
    """

    dataset_id: str
    service: str
    ingested_at: datetime
    files: tuple[FileElement, ...]
    elements: tuple[DataElement, ...]
    time_extent: tuple[datetime, datetime] | None = field(default=None)

    @classmethod
    def build(
        cls,
        dataset_id: str,
        service: str,
        ingested_at: datetime,
        files: Iterable[FileElement],
        elements: Iterable[DataElement],
    ) -> "Dataset":
        files = tuple(sorted(files, key=lambda f: f.path))
        elements = tuple(sorted(elements, key=_element_sort_key))
        times = [e.time for e in elements if e.time is not None]
        extent = (min(times), max(times)) if times else None
        return cls(dataset_id, service, ingested_at, files, elements, extent)

    @cached_property
    def files_by_path(self) -> dict[str, FileElement]:
        return {f.path: f for f in self.files}


def validate_dataset(ds: Dataset) -> None:
    """Check every type invariant; raises ValidationError naming the field."""
    seen_paths = set()
    for f in ds.files:
        if f.size_bytes < 0:
            raise ValidationError(f"negative size_bytes on {f.path}", field="size_bytes")
        if f.element_count < 0:
            raise ValidationError(f"negative element_count on {f.path}", field="element_count")
        if (f.element_count > 0) != (f.data_category is not None):
            raise ValidationError(
                f"element_count/data_category mismatch on {f.path}", field="data_category"
            )
        if f.folder and not f.folder.endswith("/"):
            raise ValidationError(f"folder without trailing separator: {f.folder!r}", field="folder")
        if f.path in seen_paths:
            raise ValidationError(f"duplicate file path {f.path}", field="file_name")
        seen_paths.add(f.path)

    counts: dict[str, int] = {}
    for el in ds.elements:
        owner = ds.files_by_path.get(el.source_file)
        if owner is None:
            raise ValidationError(
                f"element {el.id} references missing file {el.source_file}", field="source_file"
            )
        if owner.data_category != el.category:
            raise ValidationError(
                f"element {el.id} category {el.category.value} differs from its file",
                field="category",
            )
        counts[el.source_file] = counts.get(el.source_file, 0) + 1

    for f in ds.files:
        if counts.get(f.path, 0) != f.element_count:
            raise ValidationError(
                f"element_count {f.element_count} on {f.path} does not match "
                f"{counts.get(f.path, 0)} elements",
                field="element_count",
            )

    times = [e.time for e in ds.elements if e.time is not None]
    expected_extent = (min(times), max(times)) if times else None
    if ds.time_extent != expected_extent:
        raise ValidationError("time_extent does not match element times", field="time_extent")


# --- canonical unified-export document -----------------------------------

def format_time(dt: datetime) -> str:
    """RFC-3339 UTC with Z suffix, second precision."""
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _parse_rfc3339(value: str, fieldname: str) -> datetime:
    try:
        dt = datetime.strptime(value, "%Y-%m-%dT%H:%M:%SZ")
    except ValueError:
        raise ValidationError(f"bad timestamp {value!r}", field=fieldname) from None
    return dt.replace(tzinfo=timezone.utc)


def dataset_to_document(ds: Dataset) -> dict:
    """The unified document as a plain dict, keys in canonical order."""
    return {
        "schema_version": SCHEMA_VERSION,
        "service": ds.service,
        "dataset_id": ds.dataset_id,
        "ingested_at": format_time(ds.ingested_at),
        "files": [
            {
                "name": f.file_name,
                "folder": f.folder,
                "size_bytes": f.size_bytes,
                "file_category": f.file_category.value,
                "data_category": f.data_category.value if f.data_category else None,
                "element_count": f.element_count,
            }
            for f in sorted(ds.files, key=lambda f: f.path)
        ],
        "elements": [
            {
                "id": e.id,
                "time": format_time(e.time) if e.time else None,
                "text": e.text,
                "category": e.category.value,
                "subcategory": e.subcategory,
                "source_file": e.source_file,
            }
            for e in sorted(ds.elements, key=_element_sort_key)
        ],
    }


def write_unified(ds: Dataset, destination: IO[bytes] | str) -> None:
    """Serialize a dataset to the canonical unified-export document.

    The byte stream is canonical: fixed key order, arrays sorted, no
    insignificant whitespace, UTF-8. Writing the same dataset twice yields
    identical bytes.
    """
    payload = dumps_unified(ds)
    if isinstance(destination, str):
        with open(destination, "wb") as fh:
            fh.write(payload)
    else:
        destination.write(payload)


def dumps_unified(ds: Dataset) -> bytes:
    doc = dataset_to_document(ds)
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def read_unified(source: IO[bytes] | bytes | str) -> Dataset:
    """Parse a schema_version-1 unified document back into a Dataset.

    Raises SchemaVersionError for unknown versions and ValidationError for
    any invariant violation, naming the offending field.
    """
    if isinstance(source, str):
        with open(source, "rb") as fh:
            raw = fh.read()
    elif isinstance(source, bytes):
        raw = source
    else:
        raw = source.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not a JSON document: {exc}") from None
    return dataset_from_document(doc)


def dataset_from_document(doc: dict) -> Dataset:
    if not isinstance(doc, dict):
        raise ValidationError("document root must be an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(f"unsupported schema_version {version!r}")
    for key in ("service", "dataset_id", "ingested_at", "files", "elements"):
        if key not in doc:
            raise ValidationError(f"missing field {key}", field=key)

    dataset_id = doc["dataset_id"]
    files = []
    for entry in doc["files"]:
        try:
            data_cat = entry["data_category"]
            files.append(
                FileElement(
                    file_name=entry["name"],
                    folder=entry["folder"],
                    size_bytes=entry["size_bytes"],
                    file_category=FileCategory(entry["file_category"]),
                    data_category=Category(data_cat) if data_cat is not None else None,
                    element_count=entry["element_count"],
                    dataset_id=dataset_id,
                )
            )
        except (KeyError, ValueError) as exc:
            raise ValidationError(f"bad file entry: {exc}", field="files") from None

    elements = []
    for entry in doc["elements"]:
        try:
            raw_time = entry["time"]
            elements.append(
                DataElement(
                    id=entry["id"],
                    time=_parse_rfc3339(raw_time, "time") if raw_time is not None else None,
                    text=entry["text"],
                    category=Category(entry["category"]),
                    subcategory=entry["subcategory"],
                    source_file=entry["source_file"],
                    dataset_id=dataset_id,
                )
            )
        except (KeyError, ValueError) as exc:
            raise ValidationError(f"bad element entry: {exc}", field="elements") from None

    ds = Dataset.build(
        dataset_id=dataset_id,
        service=doc["service"],
        ingested_at=_parse_rfc3339(doc["ingested_at"], "ingested_at"),
        files=files,
        elements=elements,
    )
    validate_dataset(ds)
    return ds
