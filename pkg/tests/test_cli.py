import csv
import io
import json
import subprocess
import sys

import pytest

from qkdroute import serialize
from qkdroute.cli import RunConfig, main
from qkdroute.errors import InvalidInput
from qkdroute.network import Edge

from conftest import EXAMPLE_EDGES


@pytest.fixture
def files(tmp_path):
    net = {
        "nodes": ["Q1", "Q2", "Q3"],
        "edges": [{"src": a, "dst": b, "capacity": c} for a, b, c in EXAMPLE_EDGES],
    }
    contracts = {
        "contracts": [
            {"src": "Q1", "dst": "Q2", "bandwidth": 2, "priority": 1},
            {"src": "Q2", "dst": "Q1", "bandwidth": 3, "priority": 10},
            {"src": "Q2", "dst": "Q3", "bandwidth": 2, "priority": 100},
        ]
    }
    (tmp_path / "net.json").write_text(json.dumps(net))
    (tmp_path / "contracts.json").write_text(json.dumps(contracts))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_plan_with_suggestions(files, capsys):
    code, out, err = run(capsys, "plan", files / "net.json", files / "contracts.json")
    assert code == 2
    doc = json.loads(out)
    assert [c["grant"] for c in doc["contracts"]] == [2, 1, 2]
    assert doc["objective"] == "40/1"
    assert "reduced" in err


def test_plan_objective_flag(files, capsys):
    code, out, _ = run(capsys, "plan", files / "net.json", files / "contracts.json", "--objective", "ESCF")
    assert code == 2
    assert [c["grant"] for c in json.loads(out)["contracts"]] == [2, 3, 1]


def test_plan_fully_satisfiable(files, capsys):
    (files / "ok.json").write_text(json.dumps(
        {"contracts": [{"src": "Q1", "dst": "Q2", "bandwidth": 1, "priority": 1}]}
    ))
    code, out, _ = run(capsys, "plan", files / "net.json", files / "ok.json")
    assert code == 0
    assert json.loads(out)["contracts"][0]["status"] == "granted"


def test_plan_unknown_node(files, capsys):
    (files / "bad.json").write_text(json.dumps(
        {"contracts": [{"src": "Q1", "dst": "Q9", "bandwidth": 1, "priority": 1}]}
    ))
    code, out, err = run(capsys, "plan", files / "net.json", files / "bad.json")
    assert code == 1 and out == "" and "Q9" in err


def test_plan_malformed_json(files, capsys):
    (files / "broken.json").write_text('{"contracts": [\n{"src": }]}')
    code, _, err = run(capsys, "plan", files / "net.json", files / "broken.json")
    assert code == 1 and "line 2" in err


def test_plan_budget_exit(files, capsys):
    code, _, _ = run(capsys, "plan", files / "net.json", files / "contracts.json", "--search-budget", "2")
    assert code == 4


def test_adversary_and_simulate(tmp_path, capsys):
    out_dir = tmp_path / "sap"
    code, _, err = run(capsys, "adversary", "SAP_WORST", 7, 4, 2, "--out", out_dir)
    assert code == 0 and "1/7" in err
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert manifest["predicted_ratio"] == "1/7"
    # WSP moves the second opening request to the then-wider bottom chain
    for strategy, served in (("SAP", 2), ("WSP", 8)):
        code, out, _ = run(capsys, "simulate", out_dir / "network.json", out_dir / "trace.json",
                           "--strategy", strategy)
        doc = json.loads(out)
        assert code == 0 and (doc["served"], doc["rejected"]) == (served, 14 - served)


def test_adversary_files_roundtrip_bytes(tmp_path, capsys):
    run(capsys, "adversary", "WSP_WORST", 4, 4, 2, "--out", tmp_path)
    net_text = (tmp_path / "network.json").read_text()
    trace_text = (tmp_path / "trace.json").read_text()
    net = serialize.network_from_dict(json.loads(net_text))
    trace = serialize.trace_from_dict(json.loads(trace_text))
    assert serialize.dumps(serialize.network_to_dict(net)) == net_text
    assert serialize.dumps(serialize.trace_to_dict(trace)) == trace_text
    assert json.loads((tmp_path / "manifest.json").read_text())["predicted_ratio"] == "7/13"


def test_adversary_even_edge_count(tmp_path, capsys):
    code, _, err = run(capsys, "adversary", "SAP_WORST", 4, 4, 2, "--out", tmp_path)
    assert code == 1 and "odd" in err


def test_simulate_empty_trace(files, capsys):
    (files / "empty.json").write_text('{"mu": 2, "requests": []}')
    code, out, err = run(capsys, "simulate", files / "net.json", files / "empty.json")
    assert code == 0 and json.loads(out)["served"] == 0 and "0/0" in err


def test_simulate_with_refresh_config(files, capsys):
    (files / "trace.json").write_text(json.dumps(
        {"mu": 2, "requests": [{"src": "Q2", "dst": "Q1", "bits": 1}] * 4}
    ))
    (files / "cfg.json").write_text(json.dumps({
        "strategy": "SAP",
        "refresh": {"rates": [{"src": "Q2", "dst": "Q1", "rate": 1}], "period": 1},
    }))
    code, out, _ = run(capsys, "simulate", files / "net.json", files / "trace.json", "--config", files / "cfg.json")
    doc = json.loads(out)
    assert code == 0 and doc["strategy"] == "SAP"
    assert all(len(d) == 1 for d in doc["decisions"])  # always the direct link


def verify_table(capsys, *argv):
    code, out, _ = run(capsys, "verify", *argv)
    return code, list(csv.DictReader(io.StringIO(out)))


def test_verify_matching_grid(capsys):
    code, rows = verify_table(capsys, "SAP_WORST", "5,6,3", "7,4,2")
    assert code == 0
    assert [r["match"] for r in rows] == ["true", "true"]
    assert [r["simulated_ratio"] for r in rows] == ["1/7", "1/7"]


def test_verify_wsp_grid(capsys):
    code, rows = verify_table(capsys, "WSP_WORST", "3,2,2", "4,4,2")
    assert code == 0
    assert [r["simulated_ratio"] for r in rows] == ["5/9", "7/13"]


def test_verify_reports_mismatch(capsys):
    code, rows = verify_table(capsys, "WSP_WORST", "2,2,1", "4,4,2")
    assert code == 3
    assert rows[0]["status"].startswith("invalid") and rows[1]["match"] == "true"


def test_verify_skips_over_budget(capsys):
    code, rows = verify_table(capsys, "WSP_WORST", "4,4,2", "--search-budget", "3")
    assert code == 0 and rows[0]["status"] == "skipped"


def test_verify_empty_grid(capsys):
    code, rows = verify_table(capsys, "SAP_WORST")
    assert code == 0 and rows == []


def test_paths_command(files, capsys):
    code, out, _ = run(capsys, "paths", files / "net.json", "Q2", "Q1")
    doc = json.loads(out)
    assert code == 0 and len(doc["paths"]) == 2
    code, _, _ = run(capsys, "paths", files / "net.json", "Q2", "Q2")
    assert code == 1


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["plan"])
    assert info.value.code == 1


def test_run_config_defaults_and_unknown_keys():
    cfg = RunConfig.from_dict({})
    assert (cfg.max_hops, cfg.objective.value, cfg.refresh) == (3, "PESCF", None)
    with pytest.raises(InvalidInput, match="unknown"):
        RunConfig.from_dict({"max_hop": 2})
    cfg = RunConfig.from_dict({"refresh": {"rates": [{"src": "a", "dst": "b", "rate": 2}], "period": 3}})
    assert cfg.refresh.rates == {Edge("a", "b"): 2}


def test_module_entry_point_is_deterministic(files):
    cmd = [sys.executable, "-m", "qkdroute", "plan", str(files / "net.json"),
           str(files / "contracts.json"), "--objective", "EDGR"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == second.returncode == 2
    assert first.stdout == second.stdout and first.stdout
