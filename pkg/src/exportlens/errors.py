"""Exception hierarchy shared by all exportlens modules."""


class ExportLensError(Exception):
    """Base class for all errors raised by this package."""


class ArchiveFormatError(ExportLensError):
    """The input is not a well-formed zip archive."""


class ArchiveSecurityError(ExportLensError):
    """The archive contains entry paths that must not be extracted (traversal)."""


class UnknownServiceError(ExportLensError):
    """No registered service signature matched the archive listing."""


class WrapperFormatError(ExportLensError):
    """A JS-wrapped export file does not contain a single JSON assignment."""


class SchemaVersionError(ExportLensError):
    """A unified-export document declares an unsupported schema_version."""


class ValidationError(ExportLensError):
    """A document or value violates a model invariant.

    ``field`` names the offending field where known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class ConflictError(ExportLensError):
    """Two datasets with the same dataset_id were merged."""


class DegenerateLayoutError(ExportLensError):
    """Treemap layout was requested for nodes whose weights are all zero."""


class UnknownElementError(ExportLensError):
    """A rating referenced an element id that is not part of any loaded dataset."""
