"""Local HTTP service wrapping the engine for the web UI and thin clients.

Everything stays on the user's machine: the app is meant to bind to
loopback, holds parsed datasets in process memory only (gone when the
process ends), performs no outbound requests, and persists nothing except
the ratings file the user configured. Endpoints are read-only projections
of the engine except dataset upload/removal and rating.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..archive import load_signatures
from ..errors import (
    ArchiveFormatError,
    ArchiveSecurityError,
    ConflictError,
    DegenerateLayoutError,
    ExportLensError,
    SchemaVersionError,
    UnknownElementError,
    UnknownServiceError,
    ValidationError,
)
from ..model import CATEGORY_COLORS, Category, Dataset, format_time, read_unified
from ..parsers import ingest_archive
from ..quirks import parse_timestamp
from ..query import Selection, compute_stats, merge, partition_by_dataset, timeline_project
from ..ratings import SensitivityStore
from ..treemap import color_of, layout, nodes_from_files
from . import schemas

_STATUS = {
    ArchiveFormatError: 400,
    ArchiveSecurityError: 400,
    UnknownServiceError: 422,
    SchemaVersionError: 422,
    ValidationError: 422,
    ConflictError: 409,
    DegenerateLayoutError: 409,
    UnknownElementError: 404,
}


class EngineState:
    """In-memory session state: loaded datasets plus the rating store."""

    def __init__(self, ratings_path=None, signatures=None, rules_dir=None):
        self.datasets: dict[str, Dataset] = {}
        self.signatures = signatures
        self.rules_dir = rules_dir
        self.store = SensitivityStore(ratings_path)
        self.lock = threading.Lock()

    def view(self, selection: Selection):
        datasets = list(self.datasets.values())
        if selection.dataset_ids:
            missing = selection.dataset_ids - set(self.datasets)
            if missing:
                raise UnknownElementError(f"unknown dataset ids: {sorted(missing)}")
        return merge(datasets)

    def add(self, dataset: Dataset):
        with self.lock:
            if dataset.dataset_id in self.datasets:
                raise ConflictError(f"dataset {dataset.dataset_id} already loaded")
            self.datasets[dataset.dataset_id] = dataset

    def element_ids(self) -> set[str]:
        return {el.id for ds in self.datasets.values() for el in ds.elements}


def create_app(
    ratings_path: str | None = None,
    signatures_path: str | None = None,
    rules_dir: str | None = None,
    webui_dir: str | None = None,
) -> FastAPI:
    signatures = load_signatures(signatures_path) if signatures_path else None
    state = EngineState(ratings_path=ratings_path, signatures=signatures, rules_dir=rules_dir)
    app = FastAPI(title="exportlens", version=__version__)
    app.state.engine = state

    @app.exception_handler(ExportLensError)
    async def engine_error(request: Request, exc: ExportLensError):
        status = _STATUS.get(type(exc), 422)
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    def selection_from(
        datasets: list[str] = Query(default=[], alias="dataset"),
        categories: list[str] = Query(default=[], alias="category"),
        time_from: str | None = Query(default=None, alias="from"),
        time_to: str | None = Query(default=None, alias="to"),
        q: str | None = Query(default=None),
    ) -> Selection:
        cats = set()
        for name in categories:
            try:
                cats.add(Category(name))
            except ValueError:
                raise ValidationError(f"unknown category {name!r}", field="category") from None
        time_range = None
        if time_from or time_to:
            start = parse_timestamp(time_from) if time_from else None
            end = parse_timestamp(time_to) if time_to else None
            if (time_from and start is None) or (time_to and end is None):
                raise ValidationError("unparseable time bound", field="from/to")
            if start is None or end is None:
                raise ValidationError("from and to must be given together", field="from/to")
            time_range = (start, end)
        return Selection(
            dataset_ids=frozenset(datasets),
            categories=frozenset(cats),
            time_range=time_range,
            query=q,
        )

    def summary(ds: Dataset) -> schemas.DatasetSummary:
        extent = None
        if ds.time_extent:
            extent = (format_time(ds.time_extent[0]), format_time(ds.time_extent[1]))
        return schemas.DatasetSummary(
            dataset_id=ds.dataset_id,
            service=ds.service,
            ingested_at=format_time(ds.ingested_at),
            file_count=len(ds.files),
            element_count=len(ds.elements),
            total_size_bytes=sum(f.size_bytes for f in ds.files),
            time_extent=extent,
        )

    def element_row(el) -> schemas.ElementRow:
        return schemas.ElementRow(
            id=el.id,
            time=format_time(el.time) if el.time else None,
            text=el.text,
            category=el.category.value,
            subcategory=el.subcategory,
            dataset_id=el.dataset_id,
            source_file=el.source_file,
        )

    @app.get("/api/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/api/categories", response_model=list[schemas.CategoryInfo])
    def categories():
        return [
            schemas.CategoryInfo(
                name=cat.value, label=cat.label, color=CATEGORY_COLORS[cat], order=i
            )
            for i, cat in enumerate(Category)
        ]

    @app.get("/api/services", response_model=list[str])
    def services():
        from ..archive import default_signatures

        sigs = state.signatures or default_signatures()
        return [sig.service for sig in sigs]

    @app.get("/api/datasets", response_model=list[schemas.DatasetSummary])
    def list_datasets():
        return [summary(ds) for ds in state.datasets.values()]

    @app.post("/api/datasets", response_model=schemas.IngestResponse, status_code=201)
    async def upload_archive(
        request: Request,
        name: str = Query(default="archive.zip"),
        service: str | None = Query(default=None),
    ):
        data = await request.body()
        if not data:
            raise ArchiveFormatError("empty request body")
        dataset, report = ingest_archive(
            data,
            archive_name=name,
            service=service,
            signatures=state.signatures,
            rules_dir=state.rules_dir,
        )
        state.add(dataset)
        return schemas.IngestResponse(
            dataset=summary(dataset),
            report=schemas.ParseReportModel(
                files_parsed=report.files_parsed,
                files_skipped=report.files_skipped,
                elements_emitted=report.elements_emitted,
                warnings=[
                    schemas.ParseWarning(path=p, message=m) for p, m in report.warnings
                ],
            ),
        )

    @app.post("/api/datasets/unified", response_model=schemas.DatasetSummary, status_code=201)
    async def upload_unified(request: Request):
        data = await request.body()
        dataset = read_unified(data)
        state.add(dataset)
        return summary(dataset)

    @app.delete("/api/datasets/{dataset_id}", status_code=204)
    def remove_dataset(dataset_id: str):
        with state.lock:
            if dataset_id not in state.datasets:
                raise HTTPException(status_code=404, detail=f"no dataset {dataset_id}")
            del state.datasets[dataset_id]
        return Response(status_code=204)

    @app.get("/api/stats", response_model=schemas.StatsResponse)
    def stats(request: Request):
        selection = selection_from(**_selection_kwargs(request))
        view = state.view(selection)
        result = compute_stats(view, selection)
        extent = None
        if result.time_extent:
            extent = (format_time(result.time_extent[0]), format_time(result.time_extent[1]))
        return schemas.StatsResponse(
            element_count=result.element_count,
            category_counts={cat.value: n for cat, n in result.category_counts.items()},
            service_counts=result.service_counts,
            total_size_bytes=result.total_size_bytes,
            time_extent=extent,
        )

    @app.get("/api/treemap", response_model=schemas.TreemapResponse)
    def treemap(
        request: Request,
        scale: str = Query(default="size"),
        width: float = Query(default=1200.0, gt=0),
        height: float = Query(default=800.0, gt=0),
    ):
        selection = selection_from(**_selection_kwargs(request))
        view = state.view(selection)
        files = [
            f
            for f in view.files
            if (not selection.dataset_ids or f.dataset_id in selection.dataset_ids)
            and (not selection.categories or f.data_category in selection.categories)
        ]
        if not files:
            raise DegenerateLayoutError("no files in selection")
        rects = layout(nodes_from_files(files, scale), width, height)
        tiles = [
            schemas.TreemapTile(
                file=schemas.FileInfo(
                    dataset_id=r.node.file.dataset_id,
                    name=r.node.file.file_name,
                    folder=r.node.file.folder,
                    size_bytes=r.node.file.size_bytes,
                    file_category=r.node.file.file_category.value,
                    data_category=(
                        r.node.file.data_category.value if r.node.file.data_category else None
                    ),
                    element_count=r.node.file.element_count,
                ),
                x=r.x,
                y=r.y,
                w=r.w,
                h=r.h,
                color=color_of(r.node),
            )
            for r in rects
        ]
        return schemas.TreemapResponse(width=width, height=height, scale=scale, tiles=tiles)

    @app.get("/api/timeline", response_model=schemas.TimelineResponse)
    def timeline(request: Request, split: bool = Query(default=False)):
        selection = selection_from(**_selection_kwargs(request))
        view = state.view(selection)
        if split:
            parts = partition_by_dataset(view, selection)
            panels = [
                schemas.TimelinePanel(
                    dataset_id=ds.dataset_id,
                    label=f"{ds.service} ({ds.dataset_id})",
                    points=[_point(p) for p in points],
                )
                for ds, points in parts
            ]
        else:
            points = timeline_project(el for el in view.elements if selection.matches(el))
            panels = [
                schemas.TimelinePanel(
                    dataset_id=None, label=None, points=[_point(p) for p in points]
                )
            ]
        return schemas.TimelineResponse(panels=panels)

    @app.get("/api/elements", response_model=schemas.ElementsPage)
    def elements(
        request: Request,
        offset: int = Query(default=0, ge=0),
        limit: int = Query(default=200, ge=1, le=5000),
    ):
        selection = selection_from(**_selection_kwargs(request))
        view = state.view(selection)
        selected = [el for el in view.elements if selection.matches(el)]
        return schemas.ElementsPage(
            total=len(selected),
            offset=offset,
            rows=[element_row(el) for el in selected[offset : offset + limit]],
        )

    @app.get("/api/elements/{element_id}", response_model=schemas.ElementRow)
    def element(element_id: str):
        for ds in state.datasets.values():
            for el in ds.elements:
                if el.id == element_id:
                    return element_row(el)
        raise UnknownElementError(f"no element {element_id}")

    @app.get("/api/ratings", response_model=list[schemas.RatingInfo])
    def ratings():
        return [
            schemas.RatingInfo(
                element_id=r.element_id, value=r.value, rated_at=format_time(r.rated_at)
            )
            for r in state.store.ratings()
        ]

    @app.post("/api/ratings", response_model=schemas.RatingResponse)
    def rate(body: schemas.RatingRequest):
        with state.lock:
            known = state.element_ids()
            rating = state.store.rate(body.element_id, body.value, known_ids=known)
            persisted = False
            if state.store.path:
                try:
                    state.store.save()
                    persisted = True
                except OSError:
                    persisted = False
            return schemas.RatingResponse(
                rating=schemas.RatingInfo(
                    element_id=rating.element_id,
                    value=rating.value,
                    rated_at=format_time(rating.rated_at),
                ),
                average=state.store.average(known),
                rated_count=len(state.store),
                persisted=persisted,
            )

    @app.get("/api/ratings/average", response_model=schemas.AverageResponse)
    def average(request: Request):
        selection = selection_from(**_selection_kwargs(request))
        view = state.view(selection)
        selected_ids = {el.id for el in view.elements if selection.matches(el)}
        rated = sum(1 for eid in selected_ids if state.store.get(eid))
        return schemas.AverageResponse(average=state.store.average(selected_ids), rated_count=rated)

    ui_dir = Path(webui_dir) if webui_dir else Path(__file__).resolve().parent.parent / "webui"
    if ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="webui")

    return app


def _selection_kwargs(request: Request) -> dict:
    params = request.query_params
    return {
        "datasets": params.getlist("dataset"),
        "categories": params.getlist("category"),
        "time_from": params.get("from"),
        "time_to": params.get("to"),
        "q": params.get("q"),
    }


def _point(p) -> "schemas.TimelinePoint":
    return schemas.TimelinePoint(
        id=p.element.id, x=p.x, y=p.y, category=p.element.category.value
    )
