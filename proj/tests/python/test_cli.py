"""CLI contract tests: exit codes and output shapes."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("SCDEBT_CLI", "")
FIXTURES = os.environ.get("SCDEBT_FIXTURES", "")

pytestmark = pytest.mark.skipif(
    not CLI or not FIXTURES, reason="CLI path or fixtures not provided"
)


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


def test_catalog_exit_codes():
    proc = run("catalog", "list", "--category", "denial-of-service")
    assert proc.returncode == 0
    assert len(proc.stdout.strip().splitlines()) == 6
    assert run("catalog", "show", "no-such").returncode == 1
    proc = run("catalog", "cwe", "400")
    assert proc.returncode == 0
    assert len(proc.stdout.strip().splitlines()) == 2


def test_gas_json_output():
    proc = run(
        "gas", "--runtime-len", "100", "--execution", "zero",
        "--update", "selfdestruct", "--gas-price", "126", "--eth-usd", "500", "--json",
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["total_gas"] == 78000
    assert doc["fee_usd"] == "4.91"


def test_gas_usage_errors():
    assert run("gas", "--gas-price", "126", "--eth-usd", "500").returncode == 2
    assert (
        run("gas", "--init-code", os.path.join(FIXTURES, "bytecode/CEOThrone.init.hex"),
            "--strict", "--execution", "zero", "--gas-price", "1", "--eth-usd", "1",
            ).returncode == 2
    )


def test_score_exit_codes():
    assert run("score", "--vector", "TI:banana").returncode == 2
    proc = run("score", "--suggest", "--finding", "variable-shadowing", "--tools", "5")
    assert proc.returncode == 0
    assert "TI:H" in proc.stdout
    assert run("score", "--suggest", "--finding", "nope").returncode == 1


def test_assess_partial_failure(tmp_path):
    out = tmp_path / "reports"
    proc = run(
        "assess",
        "--portfolio", os.path.join(FIXTURES, "portfolio_corrupt.json"),
        "--findings", os.path.join(FIXTURES, "findings_auto.json"),
        "--manual", os.path.join(FIXTURES, "findings_manual.json"),
        "--quote", os.path.join(FIXTURES, "quote.json"),
        "--out", str(out),
    )
    assert proc.returncode == 1  # one contract failed, the rest were assessed
    doc = json.loads((out / "assessment.json").read_text())
    assert len(doc["errors"]) == 1
    assert doc["errors"][0]["contract"] == "CEOThrone"
    assert len(doc["scatter"]) == 15
    assert (out / "scatter.csv").read_text().count("\n") == 16


def test_assess_stdout_json():
    proc = run(
        "assess",
        "--portfolio", os.path.join(FIXTURES, "portfolio.json"),
        "--findings", os.path.join(FIXTURES, "findings_auto.json"),
        "--quote", os.path.join(FIXTURES, "quote.json"),
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["portfolio"] == "portfolio"
    assert run("assess", "--portfolio", "/nope.json", "--quote",
               os.path.join(FIXTURES, "quote.json")).returncode == 2


def test_env_var_config_and_price_fallback():
    env = dict(os.environ)
    env["CONTRACT_DEBT_CONFIG"] = os.path.join(FIXTURES, "config.json")
    # An unreachable price endpoint falls back to the static quote, with a
    # warning recorded in the report.
    env["CONTRACT_DEBT_PRICE_URL"] = "http://127.0.0.1:1/price"
    proc = run(
        "assess",
        "--portfolio", os.path.join(FIXTURES, "portfolio.json"),
        "--findings", os.path.join(FIXTURES, "findings_auto.json"),
        "--quote", os.path.join(FIXTURES, "quote.json"),
        env=env,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert any("fallback" in w for w in doc["warnings"])
    ceo = [p for p in doc["scatter"] if p["contract"] == "CEOThrone"][0]
    assert ceo["cost_usd"] == "56.52"
