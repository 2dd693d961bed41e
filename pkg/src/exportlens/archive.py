"""Zip archive ingestion: entry listing, service detection, file elements.

Export archives arrive as plain zip files. This module never extracts to
disk; entries are listed first and individual members are read on demand by
the parsers. Detection works on path shapes alone (glob signatures), because
services do not label their exports in any reliable machine-readable way.
"""

from __future__ import annotations

import fnmatch
import io
import json
import zipfile
from dataclasses import dataclass
from importlib import resources

from .errors import ArchiveFormatError, ArchiveSecurityError, UnknownServiceError
from .model import FileElement, classify_file

# Entries above this size are listed but never read into memory.
DEFAULT_MAX_ENTRY_BYTES = 512 * 1024 * 1024


@dataclass(frozen=True)
class ArchiveEntry:
    path: str  # forward slashes, relative
    size_bytes: int


@dataclass(frozen=True)
class ArchiveListing:
    archive_name: str
    entries: tuple[ArchiveEntry, ...]

    @property
    def paths(self) -> tuple[str, ...]:
        return tuple(e.path for e in self.entries)


@dataclass(frozen=True)
class ServiceSignature:
    """Path-shape fingerprint of one service's export layout.

    A listing matches when every required glob matches at least one entry
    and no forbidden glob matches any. Globs use fnmatch syntax; ``*``
    crosses directory separators.
    """

    service: str
    required_globs: tuple[str, ...]
    forbidden_globs: tuple[str, ...] = ()
    priority: int = 0

    def __post_init__(self):
        if not self.required_globs:
            raise ValueError(f"signature for {self.service} has no required globs")

    def matches(self, paths: tuple[str, ...]) -> bool:
        for glob in self.required_globs:
            if not any(fnmatch.fnmatchcase(p, glob) for p in paths):
                return False
        for glob in self.forbidden_globs:
            if any(fnmatch.fnmatchcase(p, glob) for p in paths):
                return False
        return True


def _normalize_path(raw: str) -> str:
    path = raw.replace("\\", "/")
    if path.startswith("/") or (len(path) > 1 and path[1] == ":"):
        raise ArchiveSecurityError(f"absolute entry path rejected: {raw!r}")
    if any(seg == ".." for seg in path.split("/")):
        raise ArchiveSecurityError(f"path traversal rejected: {raw!r}")
    return path


def list_archive(data: bytes, archive_name: str = "archive.zip") -> ArchiveListing:
    """List all stored files of a zip archive.

    Directory entries are dropped; sizes are uncompressed sizes. A single
    traversal path poisons the whole archive (security error), before any
    content is touched.
    """
    try:
        zf = zipfile.ZipFile(io.BytesIO(data))
        infos = zf.infolist()
    except (zipfile.BadZipFile, OSError) as exc:
        raise ArchiveFormatError(f"{archive_name}: not a zip archive ({exc})") from None
    entries = []
    for info in infos:
        path = _normalize_path(info.filename)
        if info.is_dir() or path.endswith("/"):
            continue
        entries.append(ArchiveEntry(path=path, size_bytes=info.file_size))
    return ArchiveListing(archive_name=archive_name, entries=tuple(entries))


class ZipReader:
    """Listing plus on-demand member access over an in-memory archive."""

    def __init__(self, data: bytes, archive_name: str = "archive.zip"):
        self.listing = list_archive(data, archive_name)
        self._zf = zipfile.ZipFile(io.BytesIO(data))
        self._sizes = {e.path: e.size_bytes for e in self.listing.entries}

    def read(self, path: str, max_bytes: int = DEFAULT_MAX_ENTRY_BYTES) -> bytes:
        size = self._sizes.get(path)
        if size is None:
            raise KeyError(path)
        if size > max_bytes:
            raise MemoryError(f"{path}: {size} bytes exceeds cap {max_bytes}")
        try:
            return self._zf.read(path)
        except (zipfile.BadZipFile, OSError) as exc:
            raise ArchiveFormatError(f"{path}: corrupt member ({exc})") from None


def detect_service(
    listing: ArchiveListing, signatures: tuple[ServiceSignature, ...] | None = None
) -> str:
    """Pick the highest-priority signature matching the listing.

    Pure function of the set of entry paths: reordering entries cannot
    change the outcome. Ties in priority resolve by table order.
    """
    if signatures is None:
        signatures = default_signatures()
    paths = listing.paths
    best: ServiceSignature | None = None
    for sig in signatures:
        if sig.matches(paths) and (best is None or sig.priority > best.priority):
            best = sig
    if best is None:
        raise UnknownServiceError(
            f"{listing.archive_name}: no service signature matched; "
            "pass the service explicitly to force one"
        )
    return best.service


def build_file_elements(listing: ArchiveListing, dataset_id: str) -> list[FileElement]:
    """One FileElement per archive entry; categories by extension, no data yet."""
    out = []
    for entry in listing.entries:
        folder, _, name = entry.path.rpartition("/")
        out.append(
            FileElement(
                file_name=name,
                folder=folder + "/" if folder else "",
                size_bytes=entry.size_bytes,
                file_category=classify_file(name),
                data_category=None,
                element_count=0,
                dataset_id=dataset_id,
            )
        )
    return out


def load_signatures(path: str) -> tuple[ServiceSignature, ...]:
    """Read a signature table from a JSON config file.

    Format: {"signatures": [{"service", "required", "forbidden"?, "priority"?}]}
    """
    with open(path, "rb") as fh:
        return _signatures_from_doc(json.load(fh), origin=path)


def default_signatures() -> tuple[ServiceSignature, ...]:
    doc = json.loads(
        resources.files("exportlens").joinpath("data", "signatures.json").read_text("utf-8")
    )
    return _signatures_from_doc(doc, origin="built-in signatures")


def _signatures_from_doc(doc: dict, origin: str) -> tuple[ServiceSignature, ...]:
    sigs = []
    try:
        for item in doc["signatures"]:
            sigs.append(
                ServiceSignature(
                    service=item["service"],
                    required_globs=tuple(item["required"]),
                    forbidden_globs=tuple(item.get("forbidden", ())),
                    priority=int(item.get("priority", 0)),
                )
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{origin}: bad signature table ({exc})") from None
    return tuple(sigs)
