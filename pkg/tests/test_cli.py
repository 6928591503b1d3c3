"""CLI behavior: exit codes, table output, and parity with the HTTP API."""

import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from cloudpick import CatalogStore
from cloudpick.cli import cli
from cloudpick.service import create_app


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def catalog_path(fixtures_dir):
    return str(fixtures_dir / "catalog.json")


@pytest.fixture()
def client(fixture_catalog):
    return TestClient(create_app(CatalogStore(fixture_catalog)))


class TestLoadValidate:
    def test_load_summary(self, runner, catalog_path):
        result = runner.invoke(cli, ["load", catalog_path])
        assert result.exit_code == 0
        assert "9 providers" in result.output

    def test_validate_ok(self, runner, catalog_path):
        result = runner.invoke(cli, ["validate", catalog_path])
        assert result.exit_code == 0
        assert "OK" in result.output

    def test_validate_bad_catalog_exits_one(self, runner, tmp_path):
        doc = {
            "providers": [{"name": "acme", "currency": "USD"}],
            "compute": [{
                "id": "bad", "provider": "acme", "name": "Bad", "cores": 0,
                "clock_speed": {"value": 1, "unit": "GHz"},
                "memory": {"value": 1, "unit": "GB"},
                "locations": ["Europe"],
                "plans": [{"plan_type": "pay-as-you-go", "billing_unit": "per-hour",
                           "cost_per_period": {"value": 0.1, "unit": "USD/hour"},
                           "period_length": {"value": 1, "unit": "hour"}}],
            }],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        result = runner.invoke(cli, ["validate", str(path)])
        assert result.exit_code == 1
        assert "Core >= 1" in result.output

    def test_unknown_command_is_usage_error(self, runner):
        result = runner.invoke(cli, ["frobnicate"])
        assert result.exit_code == 2


class TestMatch:
    def test_table_output(self, runner, catalog_path):
        result = runner.invoke(cli, [
            "--catalog", catalog_path, "match", "compute",
            "--min-cores", "2", "--min-memory-gb", "4", "--location", "Europe"])
        assert result.exit_code == 0
        assert "rackspace-cloud-server" in result.output
        assert "ec2-micro" not in result.output

    def test_missing_catalog_is_usage_error(self, runner):
        result = runner.invoke(cli, ["match", "compute"])
        assert result.exit_code == 2

    def test_domain_error_exits_one(self, runner, catalog_path):
        result = runner.invoke(cli, [
            "--catalog", catalog_path, "match", "compute", "--name-regex", "[oops"])
        assert result.exit_code == 1


class TestParityWithService:
    def test_match_json_equals_http_body(self, runner, catalog_path, client):
        result = runner.invoke(cli, [
            "--catalog", catalog_path, "--output", "json", "match", "compute",
            "--min-cores", "2", "--sort", "memory", "--order", "desc",
            "--columns", "id,memory,cores"])
        assert result.exit_code == 0
        response = client.get("/v1/offers/compute", params={
            "min_cores": 2, "sort": "memory", "order": "desc",
            "columns": "id,memory,cores"})
        assert result.output.strip() == response.content.decode()

    def test_storage_parity(self, runner, catalog_path, client):
        result = runner.invoke(cli, [
            "--catalog", catalog_path, "--output", "json", "match", "storage",
            "--size-gb", "5"])
        response = client.get("/v1/offers/storage", params={"size_gb": 5})
        assert result.output.strip() == response.content.decode()

    def test_export_turtle_equals_http_body(self, runner, catalog_path, client):
        result = runner.invoke(cli, ["--catalog", catalog_path, "export",
                                     "--format", "turtle"])
        assert result.exit_code == 0
        response = client.get("/v1/export/ontology")
        assert result.output == response.text

    def test_recommend_parity(self, runner, catalog_path, client, fixtures_dir):
        scenario_path = str(fixtures_dir / "scenario.json")
        result = runner.invoke(cli, [
            "--catalog", catalog_path, "--output", "json",
            "recommend", "--scenario", scenario_path])
        body = json.loads((fixtures_dir / "scenario.json").read_text())
        response = client.post("/v1/recommend", json=body)
        assert result.output.strip() == response.content.decode()


class TestCostCommand:
    def test_zero_scenario_totals_zero(self, runner, catalog_path, fixtures_dir):
        result = runner.invoke(cli, [
            "--catalog", catalog_path, "cost",
            "--scenario", str(fixtures_dir / "scenario-zero.json")])
        assert result.exit_code == 0
        assert "total: 0.000000" in result.output

    def test_infeasible_scenario_exits_one(self, runner, catalog_path, tmp_path):
        path = tmp_path / "impossible.json"
        path.write_text(json.dumps({"min_cores": 512}))
        result = runner.invoke(cli, ["--catalog", catalog_path, "cost",
                                     "--scenario", str(path)])
        assert result.exit_code == 1

    def test_persistent_scenario_bundles_block_store(self, runner, catalog_path,
                                                     fixtures_dir):
        result = runner.invoke(cli, [
            "--catalog", catalog_path, "--output", "json", "cost",
            "--scenario", str(fixtures_dir / "scenario-persistent.json")])
        assert result.exit_code == 0
        best = json.loads(result.output)
        assert best["bundle"]["storage"] == "ebs"
        assert best["bundle"]["compute"].startswith("ec2-")


class TestMonthLengthOverride:
    def test_override_changes_storage_proration(self, runner, catalog_path, tmp_path):
        scenario = {
            "compute_hours": 1, "instance_count": 1, "storage_gb": 10,
            "storage_duration_days": 30, "location": "NorthAmerica",
        }
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(scenario))
        default = runner.invoke(cli, ["--catalog", catalog_path, "--output", "json",
                                      "cost", "--scenario", str(path)])
        overridden = runner.invoke(cli, ["--catalog", catalog_path,
                                         "--month-length-days", "30",
                                         "--output", "json",
                                         "cost", "--scenario", str(path)])
        base_total = json.loads(default.output)["breakdown"]["total"]
        override_total = json.loads(overridden.output)["breakdown"]["total"]
        # 30 of 31 days prorates below the full-month price; with a
        # 30-day month the same usage bills a whole month.
        assert override_total > base_total


class TestRecommendCommand:
    def test_ranked_output(self, runner, catalog_path, fixtures_dir):
        result = runner.invoke(cli, [
            "--catalog", catalog_path, "recommend",
            "--scenario", str(fixtures_dir / "scenario.json"), "--top-k", "3"])
        assert result.exit_code == 0
        assert result.output.startswith("#1 ")

    def test_empty_result_exits_one(self, runner, catalog_path, tmp_path):
        path = tmp_path / "impossible.json"
        path.write_text(json.dumps({"min_cores": 512}))
        result = runner.invoke(cli, ["--catalog", catalog_path, "recommend",
                                     "--scenario", str(path)])
        assert result.exit_code == 1
