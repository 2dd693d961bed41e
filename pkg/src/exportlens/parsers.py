"""Turn archive entries into data elements via the per-service rule tables.

parse_export never aborts on a malformed member: anything that fails to
decode, unwrap, or parse is recorded as a warning on the report and the file
simply keeps no data elements. Only an unreadable archive as a whole raises.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .archive import DEFAULT_MAX_ENTRY_BYTES, ZipReader, build_file_elements, detect_service
from .errors import ArchiveFormatError, WrapperFormatError
from .model import DataElement, Dataset, FileElement, element_id
from .quirks import parse_timestamp, repair_mojibake, unwrap_js_export
from .rules import ParserRule, RuleTable, iter_records, render_template, resolve_path, rule_table_for


@dataclass
class ParseReport:
    files_parsed: int = 0
    files_skipped: int = 0
    elements_emitted: int = 0
    warnings: list[tuple[str, str]] = field(default_factory=list)

    def warn(self, path: str, message: str) -> None:
        self.warnings.append((path, message))


def parse_export(
    reader: ZipReader,
    service: str,
    table: RuleTable,
    dataset_id: str | None = None,
    ingested_at: datetime | None = None,
    max_entry_bytes: int = DEFAULT_MAX_ENTRY_BYTES,
) -> tuple[Dataset, ParseReport]:
    """Parse every rule-matched file of an archive into one Dataset.

    Element ids depend only on (service, file path, ordinal within file,
    text), so the result is identical across runs and unaffected by the
    order files are visited in.
    """
    if dataset_id is None:
        dataset_id = f"{service}-{reader.listing.archive_name}"
    if ingested_at is None:
        ingested_at = datetime.now(timezone.utc).replace(microsecond=0)

    report = ParseReport()
    files = build_file_elements(reader.listing, dataset_id)
    elements: list[DataElement] = []
    final_files: list[FileElement] = []

    for file_el in files:
        path = file_el.path
        rule = table.rule_for(path)
        if rule is None:
            report.files_skipped += 1
            final_files.append(file_el)
            continue
        try:
            file_elements = _parse_file(reader, path, rule, dataset_id, max_entry_bytes, report)
        except _FileProblem as problem:
            report.warn(path, str(problem))
            report.files_skipped += 1
            final_files.append(file_el)
            continue
        report.files_parsed += 1
        report.elements_emitted += len(file_elements)
        elements.extend(file_elements)
        if file_elements:
            file_el = FileElement(
                file_name=file_el.file_name,
                folder=file_el.folder,
                size_bytes=file_el.size_bytes,
                file_category=file_el.file_category,
                data_category=rule.category,
                element_count=len(file_elements),
                dataset_id=dataset_id,
            )
        final_files.append(file_el)

    dataset = Dataset.build(
        dataset_id=dataset_id,
        service=service,
        ingested_at=ingested_at,
        files=final_files,
        elements=elements,
    )
    return dataset, report


class _FileProblem(Exception):
    """Internal: per-file parse failure, converted to a report warning."""


def _parse_file(
    reader: ZipReader,
    path: str,
    rule: ParserRule,
    dataset_id: str,
    max_entry_bytes: int,
    report: ParseReport,
) -> list[DataElement]:
    try:
        raw = reader.read(path, max_bytes=max_entry_bytes)
    except MemoryError as exc:
        raise _FileProblem(f"skipped: {exc}") from None
    except ArchiveFormatError as exc:
        raise _FileProblem(str(exc)) from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise _FileProblem(f"not UTF-8: {exc}") from None

    doc = _load_document(text, rule.format)
    out: list[DataElement] = []
    bad_times = 0
    for record, outer in iter_records(doc, rule.records):
        if not isinstance(record, dict):
            continue
        time = None
        if rule.time_path is not None:
            raw_time = _scoped_value(rule.time_path, record, outer, doc)
            if raw_time is not None:
                hint = rule.time_unit if rule.time_unit in ("s", "ms", "iso") else None
                time = parse_timestamp(raw_time, hint)
                if time is None:
                    bad_times += 1
        body = render_template(rule.text_template, record, outer, doc, transform=repair_mojibake)
        if rule.subcategory_template is not None:
            subcategory = render_template(
                rule.subcategory_template, record, outer, doc, transform=repair_mojibake
            )
        else:
            subcategory = rule.name
        out.append(
            DataElement(
                id=element_id(rule.service, path, len(out), body),
                time=time,
                text=body,
                category=rule.category,
                subcategory=subcategory,
                source_file=path,
                dataset_id=dataset_id,
            )
        )
    if bad_times:
        report.warn(path, f"{bad_times} records with unparseable timestamps")
    return out


def _load_document(text: str, fmt: str):
    if fmt == "js-wrapped-json":
        try:
            text = unwrap_js_export(text)
        except WrapperFormatError as exc:
            raise _FileProblem(str(exc)) from None
    if fmt in ("json", "js-wrapped-json"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise _FileProblem(f"invalid JSON: {exc}") from None
    if fmt == "csv":
        try:
            return list(csv.DictReader(io.StringIO(text)))
        except csv.Error as exc:
            raise _FileProblem(f"invalid CSV: {exc}") from None
    raise _FileProblem(f"unknown format {fmt!r}")


def _scoped_value(dotted: str, record, outer, root):
    for scope in (record, outer, root):
        if scope is None:
            continue
        value = resolve_path(scope, dotted)
        if value is not None:
            return value
    return None


def ingest_archive(
    data: bytes,
    archive_name: str = "archive.zip",
    service: str | None = None,
    signatures=None,
    rules_dir: str | None = None,
    ingested_at: datetime | None = None,
) -> tuple[Dataset, ParseReport]:
    """Full pipeline: list, detect (unless forced), parse.

    The dataset id is derived from the service plus a digest of the archive
    bytes, so re-ingesting the same archive reproduces the same id.
    """
    reader = ZipReader(data, archive_name)
    if service is None:
        service = detect_service(reader.listing, signatures)
    table = rule_table_for(service, rules_dir)
    digest = hashlib.sha256(data).hexdigest()[:12]
    return parse_export(
        reader,
        service,
        table,
        dataset_id=f"{service}-{digest}",
        ingested_at=ingested_at,
    )
