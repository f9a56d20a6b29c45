"""End-to-end tests of every CLI subcommand."""

import json

import pytest

from ptmc.cli import main


def run(argv, tmp_path, name="report.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    report = json.loads(out.read_text())
    return code, report


def test_construct_box_and_verify(tmp_path):
    code_file = tmp_path / "box.json"
    code, report = run(["construct", "box", "--c", "2,2", "--k", "1,1",
                        "--emit", str(code_file)], tmp_path)
    assert code == 0
    assert report["verdicts"] == {"verified": True, "separation": 3}
    assert str(code_file) in report["artifacts"]

    code, report = run(["verify", "ptmc", "--code", str(code_file)], tmp_path, "r2.json")
    assert code == 0
    assert report["verdicts"]["passed"] is True

    code, report = run(["verify", "ptmc", "--code", str(code_file), "--t", "1"],
                       tmp_path, "r3.json")
    assert code == 1
    assert report["verdicts"]["passed"] is False
    assert report["verdicts"]["failure"] in ("bad-radius", "gap")


def test_verify_failure_has_witness(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "ambient": {"kind": "torus", "moduli": [4, 4]},
        "vertices": [[0, 0]],
        "kappa": {},
    }))
    doc = json.loads(bad.read_text())
    from ptmc.codes import class_key_hash, code_from_json
    code_set, _ = code_from_json({k: v for k, v in doc.items() if k != "kappa"})
    from ptmc.codes import components_of
    h = class_key_hash(components_of(code_set)[0].class_key)
    doc["kappa"] = {h: 2}
    bad.write_text(json.dumps(doc))
    code, report = run(["verify", "ptmc", "--code", str(bad)], tmp_path)
    assert code == 1
    assert report["verdicts"]["failure"] == "gap"
    assert report["verdicts"]["witness"]


def test_construct_square_singleton(tmp_path):
    code_file = tmp_path / "sq.json"
    code, report = run(["construct", "square-singleton", "--budget", "120",
                        "--emit", str(code_file)], tmp_path)
    assert code == 0
    assert report["verdicts"] == {"outcome": "solution", "verified": True}
    assert report["counts"]["components"] == 8
    doc = json.loads(code_file.read_text())
    assert doc["ambient"]["moduli"] == [6, 6, 3]


def test_search_grid_enumerate(tmp_path):
    code, report = run(["search", "--grid", "4,4", "--enumerate"], tmp_path)
    assert code == 0
    assert report["verdicts"]["exhaustive"] is True
    assert report["counts"]["solutions"] == 2


def test_search_instance_file(tmp_path):
    inst_file = tmp_path / "inst.json"
    inst_file.write_text(json.dumps({
        "universe": [1, 2],
        "tiles": [["a", [1]], ["b", [2]], ["c", [1, 2]]],
    }))
    sol_file = tmp_path / "sol.json"
    code, report = run(["search", "--instance", str(inst_file),
                        "--emit", str(sol_file)], tmp_path)
    assert code == 0
    assert report["verdicts"]["outcome"] == "solution"
    assert json.loads(sol_file.read_text())["tiles"] == ["a", "b"]


def test_search_timeout_exit_code(tmp_path):
    # enumerating covers of a dense instance cannot finish in the budget
    universe = list(range(24))
    tiles = []
    for a in range(24):
        for b in range(a + 1, 24):
            for c in range(b + 1, 24):
                tiles.append([f"t{a}.{b}.{c}", [a, b, c]])
    inst_file = tmp_path / "big.json"
    inst_file.write_text(json.dumps({"universe": universe, "tiles": tiles}))
    code, report = run(["search", "--instance", str(inst_file),
                        "--enumerate", "--budget", "0.02"], tmp_path)
    assert code == 3
    assert report["verdicts"]["exhaustive"] is False


def test_gamma_count(tmp_path):
    code, report = run(["gamma", "count-2ptmc"], tmp_path)
    assert code == 0
    assert report["verdicts"]["count"] == 262144


def test_gamma_no_isolated_pds(tmp_path):
    code, report = run(["gamma", "no-isolated-pds"], tmp_path)
    assert code == 0
    assert report["verdicts"]["outcome"] == "infeasible"


def test_gamma_non_isolated_pds(tmp_path):
    emit = tmp_path / "pds.json"
    code, report = run(["gamma", "non-isolated-pds", "--emit", str(emit)], tmp_path)
    assert code == 0
    assert report["verdicts"] == {"non_isolated_pass": True, "isolated_pass": False}
    assert len(json.loads(emit.read_text())["vertices"]) == 18


def test_gamma_extend(tmp_path):
    code, report = run(["gamma", "extend", "--level", "3", "--seed", "5"], tmp_path)
    assert code == 0
    assert report["verdicts"]["interior_verified"] is True


def test_gamma_stats(tmp_path):
    code, report = run(["gamma", "stats", "--level", "3"], tmp_path)
    assert code == 0
    assert report["counts"]["hive_members"] == 16
    assert report["counts"]["hive_vertices"] == 81
    assert report["counts"]["interior_degrees"] == [8]


def test_verify_gamma_pds_against_exported_graph(tmp_path):
    hive_file = tmp_path / "hive.json"
    pds_file = tmp_path / "pds.json"
    assert main(["export", "hive", "--format", "json", "--emit", str(hive_file),
                 "--out", str(tmp_path / "e.json")]) == 0
    assert main(["gamma", "non-isolated-pds", "--emit", str(pds_file),
                 "--out", str(tmp_path / "g.json")]) == 0
    code, report = run(["verify", "nipds", "--code", str(pds_file),
                        "--graph", str(hive_file)], tmp_path)
    assert code == 0 and report["verdicts"]["passed"] is True
    code, report = run(["verify", "pds", "--code", str(pds_file),
                        "--graph", str(hive_file)], tmp_path, "r5.json")
    assert code == 1 and report["verdicts"]["passed"] is False


def test_export_dot_and_json(tmp_path):
    dot = tmp_path / "hive.dot"
    code, report = run(["export", "hive", "--format", "dot", "--emit", str(dot)], tmp_path)
    assert code == 0
    text = dot.read_text()
    assert text.startswith("graph gamma2 {")
    assert text.count(" -- ") == 216

    jf = tmp_path / "region.json"
    code, report = run(["export", "region", "--level", "0", "--format", "json",
                        "--emit", str(jf)], tmp_path, "r2.json")
    assert code == 0
    assert len(json.loads(jf.read_text())["vertices"]) == 9


def test_survey(tmp_path):
    code, report = run(["survey", "--max-side", "4"], tmp_path)
    assert code == 0
    assert report["verdicts"]["exists_only_at_4x4"] is True
    rows = {(r["m"], r["n"]): r for r in report["counts"]["table"]}
    assert rows[(4, 4)]["count"] == 2
    assert rows[(3, 3)]["count"] == 0


def test_usage_error_exit_code():
    assert main(["construct", "box"]) == 2      # missing --c/--k
    assert main(["nonsense"]) == 2


def test_reports_byte_identical_modulo_timings(tmp_path):
    _, r1 = run(["gamma", "stats", "--level", "2"], tmp_path, "a.json")
    _, r2 = run(["gamma", "stats", "--level", "2"], tmp_path, "b.json")
    r1.pop("timings")
    r2.pop("timings")
    # the command echo differs only in the --out path, which is part of it
    r1["command"] = [c for c in r1["command"] if "a.json" not in c]
    r2["command"] = [c for c in r2["command"] if "b.json" not in c]
    r1["inputs"].pop("digest")
    r2["inputs"].pop("digest")
    assert r1 == r2


def test_report_field_order(tmp_path):
    out = tmp_path / "r.json"
    main(["gamma", "count-2ptmc", "--out", str(out)])
    keys = list(json.loads(out.read_text()).keys())
    assert keys == ["command", "inputs", "verdicts", "counts", "artifacts", "timings"]
