"""Smoke tests for the Python extension module."""

import json
import os

import pytest

scdebt = pytest.importorskip("scdebt")

FIXTURES = os.environ.get("SCDEBT_FIXTURES", "")

WORKED_VECTOR = (
    "TI:H/AP:A/AL:A/IC:N/FC:LT/RP:N/RL:A/AV:I/AS:M/IN:T/SC:A/BI:H/DI:H/EX:H/EC:L/P:W"
)


def test_catalog_queries():
    cat = scdebt.Catalog.bundled()
    assert len(cat) >= 20
    entry = cat.lookup("reachable-selfdestruct")
    assert entry is not None
    assert 28 in entry["cwe_ids"]
    assert cat.lookup("no-such-slug") is None
    assert cat.resolve_alias("slither", "suicidal") == "reachable-selfdestruct"
    assert cat.resolve_alias("nobody", "x") is None
    dos = cat.by_category("denial-of-service")
    assert any(v["id"] == "costly-loop" for v in dos)
    assert len(cat.by_cwe(703)) == 2


def test_decode():
    instructions = scdebt.decode("0x6001")
    assert len(instructions) == 1
    assert instructions[0]["mnemonic"] == "PUSH1"
    assert instructions[0]["immediate"] == b"\x01"
    assert scdebt.decode(b"") == []
    # Total on arbitrary bytes.
    junk = scdebt.decode(bytes(range(256)))
    assert sum(1 + len(i["immediate"]) for i in junk) == 256


def test_estimate_principal():
    est = scdebt.estimate_principal(
        runtime_len=100,
        execution="zero",
        update="selfdestruct",
        gas_price_gwei="126",
        eth_usd="500",
    )
    assert est["total_gas"] == 78000
    assert est["fee_usd"] == "4.91"
    assert est["breakdown"]["codedeposit"] == 20000


def test_scoring_and_interest():
    score = scdebt.score_vector(WORKED_VECTOR)
    assert score["total"] == "76.3"
    assert score["base"] == "92.0"
    assert scdebt.interest("76.3", "6", "0.5") == "228.9"
    assert scdebt.cls_score(295) == "0.35"
    assert scdebt.severity("Medium", "High") == "High"
    suggestion = scdebt.render_vector_suggestion("improper-inheritance", tools=5)
    assert "TI:H" in suggestion and "FC:T" in suggestion


@pytest.mark.skipif(not FIXTURES, reason="fixture directory not provided")
def test_assess_portfolio_end_to_end():
    report = scdebt.assess_portfolio(
        os.path.join(FIXTURES, "portfolio.json"),
        [os.path.join(FIXTURES, "findings_auto.json")],
        manual_path=os.path.join(FIXTURES, "findings_manual.json"),
        gas_price_gwei="126",
        eth_usd="500",
    )
    doc = json.loads(report)
    assert len(doc["items"]) == 20
    assert len(doc["scatter"]) == 16
    ceo = [i for i in doc["items"] if i["contract"] == "CEOThrone"][0]
    assert ceo["interest"] == "228.9"
    assert ceo["severity"] == "High"
