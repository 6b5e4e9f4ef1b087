import json

import pytest

from rt_lab.cli import main
from rt_lab.constructions import andrasfai
from rt_lab.graph import Graph
from rt_lab.independence import alpha
from rt_lab.report import config_hash, emit_csv, emit_json, read_csv_rows


def _run(tmp_path, *argv, threads=None):
    args = ["--out", str(tmp_path)]
    if threads is not None:
        args += ["--threads", str(threads)]
    return main(args + list(argv))


def test_construct_prints_graph6(tmp_path, capsys):
    assert _run(tmp_path, "construct", "--andrasfai", "4") == 0
    assert capsys.readouterr().out.strip() == andrasfai(4).to_graph6()
    doc = json.loads((tmp_path / "construct.json").read_text())
    assert doc["result"]["alpha"] == 4 and doc["command"] == "construct"


def test_alpha_from_graph6(tmp_path):
    assert _run(tmp_path, "alpha", "--graph6", andrasfai(3).to_graph6()) == 0
    assert json.loads((tmp_path / "alpha.json").read_text())["result"]["alpha"] == 3


def test_graph_file_source(tmp_path):
    src = tmp_path / "in.g6"
    src.write_text(andrasfai(2).to_graph6() + "\n")
    assert _run(tmp_path, "fortress", "--graph-file", str(src)) == 0
    doc = json.loads((tmp_path / "fortress.json").read_text())
    assert doc["result"]["size"] == 5 and doc["result"]["bipartition"] is None


def test_fortress_json_of_19(tmp_path):
    assert _run(tmp_path, "fortress", "--canonical", "19", "4", "7") == 0
    members = json.loads((tmp_path / "fortress.json").read_text())["result"]["fortress"]["members"]
    assert len(members) == 10 and all(m == sorted(m) for m in members)


def test_ex_writes_witness_sidecar(tmp_path):
    assert _run(tmp_path, "ex", "--n", "8", "--s", "3") == 0
    doc = json.loads((tmp_path / "ex_8_3.json").read_text())
    assert doc["result"]["ex"] == 12
    lines = (tmp_path / "ex_8_3.g6").read_text().split()
    assert len(lines) == doc["result"]["witness_count"]
    for line in lines:
        g = Graph.from_graph6(line)
        assert g.is_triangle_free() and alpha(g).alpha <= 3 and g.edge_count() == 12


def test_sweep_csv_has_row_per_s(tmp_path):
    assert _run(tmp_path, "sweep", "--n", "8") == 0
    rows = read_csv_rows(tmp_path / "sweep_8.csv")
    assert [int(r["s"]) for r in rows] == list(range(9))
    header = (tmp_path / "sweep_8.csv").read_text().splitlines()[0]
    assert header.startswith("# tool=rt_lab") and "wall_ms=" in header and "config_hash=" in header


def test_ex_budget_exit_code(tmp_path):
    assert _run(tmp_path, "ex", "--n", "12", "--s", "5", "--node-budget", "5") == 3


def test_usage_errors(tmp_path, capsys):
    assert _run(tmp_path, "ex", "--n", "4", "--s", "6") == 2
    assert _run(tmp_path, "alpha", "--graph6", "@@") == 2
    assert _run(tmp_path, "verify-paper", "--max-n", "2", "--pair", "x") == 2
    with pytest.raises(SystemExit) as exc:
        _run(tmp_path, "ex", "--n", "4")
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        _run(tmp_path, "ex", "--n", "4", "--s", "2", "--node-budget", "0")


def test_mould_command(tmp_path):
    assert _run(tmp_path, "mould", "--canonical", "49", "4", "18") == 0
    doc = json.loads((tmp_path / "mould.json").read_text())["result"]
    assert doc["found"] and doc["checks"]["ok"]
    assert doc["stats"]["eW"] == 300
    assert _run(tmp_path, "mould", "--perturb", "49", "18", "1") == 0
    assert json.loads((tmp_path / "mould.json").read_text())["result"]["found"] is False


def test_imprint_command(tmp_path):
    assert _run(tmp_path, "imprint", "--perturb", "49", "18", "1") == 0
    assert json.loads((tmp_path / "imprint.json").read_text())["result"]["found"]


def test_canonise_command(tmp_path):
    assert _run(tmp_path, "canonise", "--n", "49", "--s", "18", "--move", "1") == 0
    doc = json.loads((tmp_path / "canonise_49_18_1.json").read_text())["result"]
    assert doc["ok"] and doc["final"]["edges"] == 438 and doc["final"]["alpha"] == 18
    g = Graph.from_graph6((tmp_path / "canonise_49_18_1.g6").read_text().strip())
    assert g.edge_count() == 438 and g.is_triangle_free()


def test_verify_paper_with_extra_pair(tmp_path):
    assert _run(tmp_path, "verify-paper", "--max-n", "6", "--pair", "8,3") == 0
    rows = json.loads((tmp_path / "verify_paper_6.json").read_text())["result"]["rows"]
    assert rows[-1]["n"] == 8 and rows[-1]["ex"] == 12
    assert len(rows) == sum(n + 1 for n in range(7)) + 1


def test_json_is_byte_identical_across_runs_and_threads(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert _run(a, "sweep", "--n", "10", threads=1) == 0
    assert _run(b, "sweep", "--n", "10", threads=2) == 0
    assert (a / "sweep_10.json").read_bytes() == (b / "sweep_10.json").read_bytes()
    assert (a / "sweep_10_witnesses.g6").read_bytes() == (b / "sweep_10_witnesses.g6").read_bytes()


def test_env_var_sets_output(tmp_path, monkeypatch):
    monkeypatch.setenv("RT_LAB_OUT", str(tmp_path / "env"))
    assert main(["construct", "--andrasfai", "2"]) == 0
    assert (tmp_path / "env" / "construct.json").exists()


def test_report_helpers(tmp_path):
    cfg = {"b": 1, "a": [1, 2]}
    assert config_hash(cfg) == config_hash({"a": [1, 2], "b": 1})
    doc = emit_json(tmp_path / "x.json", "sweep", cfg, {"rows": []})
    assert json.loads((tmp_path / "x.json").read_text()) == doc
    emit_csv(tmp_path / "x.csv", cfg, ["n", "s"], [], 0)
    assert read_csv_rows(tmp_path / "x.csv") == []
    assert not list(tmp_path.glob(".*.tmp"))
