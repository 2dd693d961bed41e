"""Request/response models of the local exploration service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class CategoryInfo(BaseModel):
    name: str
    label: str
    color: str
    order: int


class ParseWarning(BaseModel):
    path: str
    message: str


class ParseReportModel(BaseModel):
    files_parsed: int
    files_skipped: int
    elements_emitted: int
    warnings: list[ParseWarning]


class DatasetSummary(BaseModel):
    dataset_id: str
    service: str
    ingested_at: str
    file_count: int
    element_count: int
    total_size_bytes: int
    time_extent: tuple[str, str] | None


class IngestResponse(BaseModel):
    dataset: DatasetSummary
    report: ParseReportModel


class StatsResponse(BaseModel):
    element_count: int
    category_counts: dict[str, int]
    service_counts: dict[str, int]
    total_size_bytes: int
    time_extent: tuple[str, str] | None


class FileInfo(BaseModel):
    dataset_id: str
    name: str
    folder: str
    size_bytes: int
    file_category: str
    data_category: str | None
    element_count: int


class TreemapTile(BaseModel):
    file: FileInfo
    x: float
    y: float
    w: float
    h: float
    color: str


class TreemapResponse(BaseModel):
    width: float
    height: float
    scale: str
    tiles: list[TreemapTile]


class TimelinePoint(BaseModel):
    id: str
    x: int  # days since 1970-01-01 (UTC date)
    y: int  # seconds since midnight UTC
    category: str


class TimelinePanel(BaseModel):
    dataset_id: str | None
    label: str | None
    points: list[TimelinePoint]


class TimelineResponse(BaseModel):
    panels: list[TimelinePanel]


class ElementRow(BaseModel):
    id: str
    time: str | None
    text: str
    category: str
    subcategory: str
    dataset_id: str
    source_file: str


class ElementsPage(BaseModel):
    total: int
    offset: int
    rows: list[ElementRow]


class RatingRequest(BaseModel):
    element_id: str
    value: float = Field(ge=0.0, le=1.0)


class RatingInfo(BaseModel):
    element_id: str
    value: float
    rated_at: str


class RatingResponse(BaseModel):
    rating: RatingInfo
    average: float | None
    rated_count: int
    persisted: bool


class AverageResponse(BaseModel):
    average: float | None
    rated_count: int
