"""Command-line frontend: ingest, stats, treemap, timeline, fixture, rate, serve.

All analysis commands operate on unified documents produced by ``ingest``;
archives are only touched at that one boundary. Every command is a pure
function of its inputs and flags except ``rate``, which appends to the
ratings file. Nothing here ever opens a network connection; ``serve`` hands
off to a local HTTP server as an explicit separate step.

Exit codes: 0 success, 1 input error, 2 internal error.
"""

from __future__ import annotations

import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import fixtures as fixture_gen
from .archive import load_signatures
from .errors import DegenerateLayoutError, ExportLensError
from .model import Category, read_unified, write_unified
from .parsers import ingest_archive
from .quirks import parse_timestamp
from .query import Selection, compute_stats, merge, partition_by_dataset, timeline_project
from .ratings import SensitivityStore
from .render import svg_timeline, svg_treemap
from .treemap import layout, nodes_from_files

ENV_SIGNATURES = "EXPORTLENS_SIGNATURES"
ENV_RULES = "EXPORTLENS_RULES"
ENV_RATINGS = "EXPORTLENS_RATINGS"


@click.group()
def cli():
    """Explore GDPR data exports locally: parse, query, and render them."""


def _signatures_from(path: str | None):
    path = path or os.environ.get(ENV_SIGNATURES)
    return load_signatures(path) if path else None


def _load_datasets(doc_paths):
    datasets = []
    for path in doc_paths:
        try:
            datasets.append(read_unified(path))
        except ExportLensError as exc:
            raise ExportLensError(f"{path}: {exc}") from None
    return datasets


def _category(value: str) -> Category:
    for cat in Category:
        if value.lower() in (cat.value.lower(), cat.label.lower()):
            return cat
    raise ExportLensError(f"unknown category {value!r}")


def _selection(dataset, category, time_from, time_to, query) -> Selection:
    time_range = None
    if time_from or time_to:
        start = parse_timestamp(time_from) if time_from else None
        end = parse_timestamp(time_to) if time_to else None
        if time_from and start is None:
            raise ExportLensError(f"cannot parse --from value {time_from!r}")
        if time_to and end is None:
            raise ExportLensError(f"cannot parse --to value {time_to!r}")
        if start is None or end is None:
            raise ExportLensError("--from and --to must be given together")
        time_range = (start, end)
    return Selection(
        dataset_ids=frozenset(dataset),
        categories=frozenset(_category(c) for c in category),
        time_range=time_range,
        query=query,
    )


def _selection_options(fn):
    fn = click.option("--dataset", multiple=True, help="Restrict to dataset ids.")(fn)
    fn = click.option("--category", multiple=True, help="Restrict to categories.")(fn)
    fn = click.option("--from", "time_from", default=None, help="Start of time range (UTC).")(fn)
    fn = click.option("--to", "time_to", default=None, help="End of time range (UTC).")(fn)
    fn = click.option("--query", default=None, help="Case-insensitive text search.")(fn)
    return fn


@cli.command()
@click.argument("archives", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--service", default=None, help="Force the service instead of detecting it.")
@click.option("--signatures", default=None, type=click.Path(exists=True),
              help="Custom service signature table.")
@click.option("--rules", "rules_dir", default=None, type=click.Path(file_okay=False),
              help="Directory with per-service rule files overriding the built-ins.")
@click.option("--out-dir", default=".", type=click.Path(file_okay=False),
              help="Where unified documents are written.")
def ingest(archives, service, signatures, rules_dir, out_dir):
    """Parse export ARCHIVES into unified documents (one per archive)."""
    sigs = _signatures_from(signatures)
    rules_dir = rules_dir or os.environ.get(ENV_RULES)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def one(path_str: str):
        path = Path(path_str)
        data = path.read_bytes()
        dataset, report = ingest_archive(
            data, archive_name=path.name, service=service, signatures=sigs, rules_dir=rules_dir
        )
        target = out / (path.stem + ".unified.json")
        write_unified(dataset, str(target))
        return path, dataset, report, target

    failures = 0
    with ThreadPoolExecutor(max_workers=min(4, len(archives))) as pool:
        for future in [pool.submit(one, a) for a in archives]:
            try:
                path, dataset, report, target = future.result()
            except ExportLensError as exc:
                failures += 1
                click.echo(f"error: {exc}", err=True)
                continue
            click.echo(
                f"{path.name}: service={dataset.service} files={len(dataset.files)} "
                f"elements={len(dataset.elements)} parsed={report.files_parsed} "
                f"skipped={report.files_skipped} warnings={len(report.warnings)} -> {target}"
            )
            for wpath, message in report.warnings:
                click.echo(f"  warning: {wpath}: {message}", err=True)
    if failures:
        raise ExportLensError(f"{failures} of {len(archives)} archives failed")


@cli.command()
@click.argument("docs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@_selection_options
@click.option("--ratings", default=None, type=click.Path(),
              help="Ratings file; adds the average sensitivity row.")
def stats(docs, dataset, category, time_from, time_to, query, ratings):
    """Per-category and per-service element counts over unified DOCS."""
    view = merge(_load_datasets(docs))
    selection = _selection(dataset, category, time_from, time_to, query)
    result = compute_stats(view, selection)

    click.echo(f"{'Category':<22}{'Elements':>10}")
    for cat in Category:
        click.echo(f"{cat.label:<22}{result.category_counts[cat]:>10}")
    click.echo(f"{'Total':<22}{result.element_count:>10}")
    click.echo("")
    click.echo(f"{'Service':<22}{'Elements':>10}")
    for service in sorted(result.service_counts):
        click.echo(f"{service:<22}{result.service_counts[service]:>10}")
    click.echo("")
    click.echo(f"Files: {len(view.files)}   Total size: {result.total_size_bytes} bytes")
    if result.time_extent:
        lo, hi = result.time_extent
        click.echo(f"Time extent: {lo.isoformat()} .. {hi.isoformat()}")
    else:
        click.echo("Time extent: none")
    if ratings:
        store = SensitivityStore(ratings)
        selected_ids = {el.id for el in view.elements if selection.matches(el)}
        average = store.average(selected_ids)
        rated = sum(1 for eid in selected_ids if store.get(eid))
        if average is None:
            click.echo("Average sensitivity: no rated elements in selection")
        else:
            click.echo(f"Average sensitivity: {average:.3f} (rated {rated})")


@cli.command()
@click.argument("docs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@_selection_options
@click.option("--scale", type=click.Choice(["size", "count"]), default="size", show_default=True)
@click.option("--width", default=1200.0, show_default=True)
@click.option("--height", default=800.0, show_default=True)
@click.option("-o", "--output", default="-", help="Output file, '-' for stdout.")
def treemap(docs, dataset, category, time_from, time_to, query, scale, width, height, output):
    """Render the file overview treemap of unified DOCS as SVG."""
    view = merge(_load_datasets(docs))
    selection = _selection(dataset, category, time_from, time_to, query)
    files = [
        f
        for f in view.files
        if (not selection.dataset_ids or f.dataset_id in selection.dataset_ids)
        and (not selection.categories or (f.data_category in selection.categories))
    ]
    if not files:
        raise ExportLensError("no files left after filtering")
    rects = layout(nodes_from_files(files, scale), width, height)
    _write_text(output, svg_treemap(rects, width, height))


@cli.command()
@click.argument("docs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@_selection_options
@click.option("--split-by-dataset", is_flag=True, help="One aligned panel per dataset.")
@click.option("--width", default=1200.0, show_default=True)
@click.option("--height", default=500.0, show_default=True)
@click.option("--utc-offset", default=0, show_default=True,
              help="Minutes to shift the day axis away from UTC.")
@click.option("-o", "--output", default="-", help="Output file, '-' for stdout.")
def timeline(docs, dataset, category, time_from, time_to, query, split_by_dataset, width, height,
             utc_offset, output):
    """Render the date x time-of-day scatterplot of unified DOCS as SVG."""
    view = merge(_load_datasets(docs))
    selection = _selection(dataset, category, time_from, time_to, query)
    if split_by_dataset:
        panels = [
            (ds.dataset_id, points) for ds, points in partition_by_dataset(view, selection)
        ]
    else:
        panels = [(None, timeline_project(el for el in view.elements if selection.matches(el)))]
    if not any(points for _, points in panels):
        raise DegenerateLayoutError("no timestamped elements to plot")
    _write_text(output, svg_timeline(panels, width, height, offset_minutes=utc_offset))


@cli.command()
@click.option("--preset", type=click.Choice(sorted(fixture_gen.PRESETS)), default=None,
              help="Generate a named scenario instead of a custom spec.")
@click.option("--service", default=None, help="Service layout to imitate.")
@click.option("--seed", default=1, show_default=True)
@click.option("--conversations", default=2, show_default=True)
@click.option("--messages", default=10, show_default=True,
              help="Messages per conversation.")
@click.option("--posts", default=10, show_default=True)
@click.option("--logins", default=5, show_default=True)
@click.option("--locations", default=20, show_default=True)
@click.option("--searches", default=10, show_default=True)
@click.option("--media", default=3, show_default=True)
@click.option("--from-year", default=2010, show_default=True)
@click.option("--to-year", default=2020, show_default=True)
@click.option("--out-dir", default=".", type=click.Path(file_okay=False))
@click.option("--name", default=None, help="Base name for the archive and manifest.")
def fixture(preset, service, seed, conversations, messages, posts, logins, locations, searches,
            media, from_year, to_year, out_dir, name):
    """Write synthetic export archives plus manifests of expected contents."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if preset:
        specs = fixture_gen.PRESETS[preset]()
    else:
        if not service:
            raise ExportLensError("--service is required unless --preset is given")
        spec = fixture_gen.FixtureSpec(
            service=service,
            seed=seed,
            volume=fixture_gen.Volume(
                conversations=conversations,
                messages_per_conversation=messages,
                posts=posts,
                logins=logins,
                locations=locations,
                searches=searches,
                media_files=media,
            ),
            time_span=fixture_gen.year_span(from_year, to_year),
            mojibake_fraction=0.2 if service == "facebook" else 0.0,
        )
        specs = [(name or f"{service}-{seed}", spec)]
    for base, spec in specs:
        archive_path = out / f"{base}.zip"
        manifest_path = out / f"{base}.manifest.json"
        manifest = fixture_gen.write_fixture(spec, str(archive_path), str(manifest_path))
        click.echo(
            f"{archive_path} ({manifest['total_elements']} elements, "
            f"service {manifest['expected_service']})"
        )


@cli.command()
@click.argument("element_id")
@click.argument("value", type=float)
@click.argument("docs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--ratings", default=None, type=click.Path(), help="Ratings file to update.")
def rate(element_id, value, docs, ratings):
    """Record a sensitivity rating (0..1) for one element of unified DOCS."""
    ratings = ratings or os.environ.get(ENV_RATINGS)
    if not ratings:
        raise ExportLensError(f"no ratings file given (flag --ratings or ${ENV_RATINGS})")
    view = merge(_load_datasets(docs))
    known = {el.id for el in view.elements}
    store = SensitivityStore(ratings)
    store.rate(element_id, value, known_ids=known)
    store.save()
    average = store.average(known)
    click.echo(f"rated {element_id[:12]}… = {value}; average {average:.3f} over {len(store)} rated")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--ratings", default=None, type=click.Path(), help="Ratings file location.")
@click.option("--signatures", default=None, type=click.Path(exists=True))
@click.option("--rules", "rules_dir", default=None, type=click.Path(file_okay=False))
def serve(host, port, ratings, signatures, rules_dir):
    """Run the local exploration service (engine API plus web UI)."""
    import uvicorn

    from .service.app import create_app

    app = create_app(
        ratings_path=ratings or os.environ.get(ENV_RATINGS),
        signatures_path=signatures or os.environ.get(ENV_SIGNATURES),
        rules_dir=rules_dir or os.environ.get(ENV_RULES),
    )
    uvicorn.run(app, host=host, port=port)


def _write_text(output: str, text: str) -> None:
    if output == "-":
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text, encoding="utf-8")


def main(argv=None) -> None:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except (ExportLensError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except Exception as exc:  # pragma: no cover - defensive
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(2)
    sys.exit(0)


if __name__ == "__main__":
    main()
