"""exportlens: local-first exploration of GDPR data-export archives."""

__version__ = "0.1.0"

from .model import (
    CATEGORY_COLORS,
    Category,
    DataElement,
    Dataset,
    FileCategory,
    FileElement,
    classify_file,
    element_id,
    read_unified,
    write_unified,
)
from .parsers import ingest_archive, parse_export
from .query import Selection, apply_selection, compute_stats, merge, timeline_project

__all__ = [
    "CATEGORY_COLORS",
    "Category",
    "DataElement",
    "Dataset",
    "FileCategory",
    "FileElement",
    "Selection",
    "apply_selection",
    "classify_file",
    "compute_stats",
    "element_id",
    "ingest_archive",
    "merge",
    "parse_export",
    "read_unified",
    "timeline_project",
    "write_unified",
    "__version__",
]
