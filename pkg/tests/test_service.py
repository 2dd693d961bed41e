"""HTTP service: upload, query endpoints, rating loop, error mapping."""

import io
import json
import zipfile

import pytest
from fastapi.testclient import TestClient

from exportlens.fixtures import generate, preset_use_case_1, preset_use_case_2
from exportlens.model import Category
from exportlens.service.app import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(ratings_path=str(tmp_path / "ratings.json"))
    with TestClient(app) as c:
        yield c


@pytest.fixture()
def loaded(client):
    """Client with all four use-case-2 datasets uploaded."""
    ids = {}
    for name, spec in preset_use_case_2():
        data, manifest = generate(spec)
        r = client.post(f"/api/datasets?name={name}.zip", content=data)
        assert r.status_code == 201, r.text
        ids[name] = (r.json()["dataset"]["dataset_id"], manifest)
    return client, ids


class TestDatasets:
    def test_upload_and_list(self, loaded):
        client, ids = loaded
        listing = client.get("/api/datasets").json()
        assert {d["dataset_id"] for d in listing} == {i for i, _ in ids.values()}
        assert all(d["element_count"] > 0 for d in listing)

    def test_upload_reports_counts(self, client):
        data, manifest = generate(preset_use_case_1())
        r = client.post("/api/datasets?name=uc1.zip", content=data)
        assert r.status_code == 201
        body = r.json()
        assert body["dataset"]["element_count"] == manifest["total_elements"]
        assert body["report"]["elements_emitted"] == manifest["total_elements"]

    def test_duplicate_upload_conflict(self, client):
        data, _ = generate(preset_use_case_1())
        assert client.post("/api/datasets", content=data).status_code == 201
        assert client.post("/api/datasets", content=data).status_code == 409

    def test_corrupt_archive_400(self, client):
        assert client.post("/api/datasets", content=b"junk").status_code == 400

    def test_unknown_service_422(self, client):
        buf = io.BytesIO()
        with zipfile.ZipFile(buf, "w") as zf:
            zf.writestr("mystery.bin", b"?")
        assert client.post("/api/datasets", content=buf.getvalue()).status_code == 422

    def test_forced_service_query_param(self, client):
        buf = io.BytesIO()
        with zipfile.ZipFile(buf, "w") as zf:
            zf.writestr("data/tweet.js", 'window.YTD.tweet.part0 = []')
        r = client.post("/api/datasets?service=twitter", content=buf.getvalue())
        assert r.status_code == 201
        assert r.json()["dataset"]["service"] == "twitter"

    def test_delete(self, loaded):
        client, ids = loaded
        victim = next(iter(ids.values()))[0]
        assert client.delete(f"/api/datasets/{victim}").status_code == 204
        assert victim not in {d["dataset_id"] for d in client.get("/api/datasets").json()}
        assert client.delete(f"/api/datasets/{victim}").status_code == 404

    def test_upload_unified_document(self, client, tmp_path):
        from exportlens.model import dumps_unified
        from exportlens.parsers import ingest_archive

        data, _ = generate(preset_use_case_1())
        ds, _ = ingest_archive(data, "uc1.zip")
        r = client.post("/api/datasets/unified", content=dumps_unified(ds))
        assert r.status_code == 201
        assert r.json()["dataset_id"] == ds.dataset_id


class TestQueries:
    def test_stats_match_manifests(self, loaded):
        client, ids = loaded
        stats = client.get("/api/stats").json()
        for cat in Category:
            expected = sum(m["expected_counts"][cat.value] for _, m in ids.values())
            assert stats["category_counts"][cat.value] == expected

    def test_stats_selection_filters(self, loaded):
        client, ids = loaded
        bob_google_id, manifest = ids["bob-google"]
        stats = client.get(f"/api/stats?dataset={bob_google_id}").json()
        assert stats["element_count"] == manifest["total_elements"]
        filtered = client.get(
            f"/api/stats?dataset={bob_google_id}&category=Location"
        ).json()
        assert filtered["element_count"] == manifest["expected_counts"]["Location"]

    def test_treemap_scales(self, loaded):
        client, _ = loaded
        by_count = client.get("/api/treemap?scale=count&width=1000&height=600").json()
        assert by_count["scale"] == "count"
        area = sum(t["w"] * t["h"] for t in by_count["tiles"])
        assert abs(area - 600_000) < 1
        whites = [t for t in by_count["tiles"] if t["color"] == "#ffffff"]
        assert whites and all(t["file"]["element_count"] == 0 for t in whites)

    def test_timeline_split_panels(self, loaded):
        client, ids = loaded
        merged = client.get("/api/timeline").json()
        split = client.get("/api/timeline?split=true").json()
        assert len(merged["panels"]) == 1
        assert len(split["panels"]) == 4
        union = sorted(p["id"] for panel in split["panels"] for p in panel["points"])
        whole = sorted(p["id"] for p in merged["panels"][0]["points"])
        assert union == whole
        assert all(0 <= p["y"] < 86400 for p in whole_points(merged))

    def test_elements_pagination(self, loaded):
        client, _ = loaded
        first = client.get("/api/elements?limit=50").json()
        assert first["total"] > 50 and len(first["rows"]) == 50
        second = client.get("/api/elements?limit=50&offset=50").json()
        assert first["rows"][0]["id"] != second["rows"][0]["id"]

    def test_element_detail(self, loaded):
        client, _ = loaded
        row = client.get("/api/elements?limit=1").json()["rows"][0]
        detail = client.get(f"/api/elements/{row['id']}").json()
        assert detail == row
        assert client.get("/api/elements/" + "0" * 64).status_code == 404

    def test_search_query(self, loaded):
        client, _ = loaded
        hits = client.get("/api/elements?q=says&limit=5000").json()
        assert hits["total"] > 0
        assert all("says" in r["text"].lower() or "says" in r["subcategory"].lower()
                   for r in hits["rows"])

    def test_categories_endpoint_is_palette(self, client):
        cats = client.get("/api/categories").json()
        assert [c["name"] for c in cats] == [c.value for c in Category]
        assert len({c["color"] for c in cats}) == len(cats)

    def test_services_endpoint(self, client):
        assert set(client.get("/api/services").json()) == {
            "google", "twitter", "facebook", "instagram",
        }


def whole_points(merged):
    return [p for panel in merged["panels"] for p in panel["points"]]


class TestRatings:
    def test_rating_loop_updates_average(self, loaded):
        client, _ = loaded
        rows = client.get("/api/elements?limit=10").json()["rows"]
        values = [i / 10 for i in range(1, 11)]
        running = []
        for row, value in zip(rows, values):
            r = client.post("/api/ratings", json={"element_id": row["id"], "value": value})
            assert r.status_code == 200, r.text
            body = r.json()
            running.append(body["average"])
            assert body["persisted"] is True
        assert running[-1] == pytest.approx(sum(values) / len(values), abs=1e-12)
        assert [client.get("/api/ratings/average").json()["rated_count"]] == [10]

    def test_rating_unknown_element_404(self, loaded):
        client, _ = loaded
        r = client.post("/api/ratings", json={"element_id": "0" * 64, "value": 0.5})
        assert r.status_code == 404

    def test_rating_out_of_range_422(self, loaded):
        client, _ = loaded
        row = client.get("/api/elements?limit=1").json()["rows"][0]
        r = client.post("/api/ratings", json={"element_id": row["id"], "value": 1.5})
        assert r.status_code == 422

    def test_average_respects_selection(self, loaded):
        client, ids = loaded
        bob_google_id, _ = ids["bob-google"]
        rows = client.get(f"/api/elements?dataset={bob_google_id}&limit=2").json()["rows"]
        client.post("/api/ratings", json={"element_id": rows[0]["id"], "value": 1.0})
        avg_bob = client.get(f"/api/ratings/average?dataset={bob_google_id}").json()
        other = ids["alice-facebook"][0]
        avg_alice = client.get(f"/api/ratings/average?dataset={other}").json()
        assert avg_bob["average"] == 1.0 and avg_bob["rated_count"] == 1
        assert avg_alice["average"] is None and avg_alice["rated_count"] == 0

    def test_ui_average_matches_cli(self, loaded, tmp_path):
        """Rating via HTTP then reading the file with the CLI gives one truth."""
        from click.testing import CliRunner

        from exportlens.cli import cli as cli_group
        from exportlens.model import write_unified
        from exportlens.parsers import ingest_archive

        client, ids = loaded
        rows = client.get("/api/elements?limit=4").json()["rows"]
        for i, row in enumerate(rows):
            client.post("/api/ratings", json={"element_id": row["id"], "value": (i + 1) / 4})
        http_avg = client.get("/api/ratings/average").json()["average"]

        docs = []
        for name, spec in preset_use_case_2():
            data, _ = generate(spec)
            ds, _ = ingest_archive(data, f"{name}.zip")
            path = tmp_path / f"{name}.unified.json"
            write_unified(ds, str(path))
            docs.append(str(path))
        ratings_path = client.app.state.engine.store.path
        result = CliRunner().invoke(
            cli_group, ["stats", *docs, "--ratings", str(ratings_path)]
        )
        assert result.exit_code == 0
        assert f"Average sensitivity: {http_avg:.3f} (rated 4)" in result.output


class TestStaticUi:
    def test_health(self, client):
        body = client.get("/api/health").json()
        assert body["status"] == "ok"
