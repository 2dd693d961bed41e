"""Shared fixtures: synthetic archives for each service, parsed once."""

from datetime import datetime, timezone

import pytest


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # Expose per-phase outcomes so the acceptance module can print a
    # PASS/FAIL banner per criterion.
    outcome = yield
    report = outcome.get_result()
    setattr(item, "rep_" + report.when, report)

from exportlens.fixtures import FixtureSpec, Volume, generate, preset_use_case_1, preset_use_case_2
from exportlens.parsers import ingest_archive
from exportlens.rules import SERVICES

SPAN = (
    datetime(2011, 1, 1, tzinfo=timezone.utc),
    datetime(2019, 12, 31, 23, 59, 59, tzinfo=timezone.utc),
)


def standard_spec(service: str, seed: int = 7) -> FixtureSpec:
    return FixtureSpec(
        service=service,
        seed=seed,
        volume=Volume(
            conversations=2,
            messages_per_conversation=12,
            posts=9,
            logins=6,
            locations=14,
            searches=8,
            media_files=4,
        ),
        time_span=SPAN,
        mojibake_fraction=0.3 if service == "facebook" else 0.0,
    )


@pytest.fixture(scope="session")
def service_archives():
    """service -> (zip bytes, manifest) for one standard fixture each."""
    return {service: generate(standard_spec(service)) for service in SERVICES}


@pytest.fixture(scope="session")
def service_datasets(service_archives):
    """service -> (Dataset, ParseReport, manifest)."""
    out = {}
    for service, (data, manifest) in service_archives.items():
        dataset, report = ingest_archive(data, archive_name=f"{service}.zip")
        out[service] = (dataset, report, manifest)
    return out


@pytest.fixture(scope="session")
def use_case_1():
    """(Dataset, manifest) for the big-conversation scenario."""
    data, manifest = generate(preset_use_case_1())
    dataset, _ = ingest_archive(data, archive_name="bob-facebook.zip")
    return dataset, manifest


@pytest.fixture(scope="session")
def use_case_2():
    """name -> (Dataset, manifest) for the four-dataset comparison scenario."""
    out = {}
    for name, spec in preset_use_case_2():
        data, manifest = generate(spec)
        dataset, _ = ingest_archive(data, archive_name=f"{name}.zip")
        out[name] = (dataset, manifest)
    return out
