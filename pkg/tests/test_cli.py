import json
import os
import subprocess
import sys

from motiondual.cli import main

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# --- report --------------------------------------------------------------------


def test_report_table(capsys):
    code, out, _ = run(["report", "--n", "7", "--bound", "1"], capsys)
    assert code == 0
    assert out.splitlines()[1].split() == ["7", "3", "3", "4", "2", "2"]


def test_report_json_schema_stable(capsys):
    code, out, _ = run(["report", "--n", "7", "--bound", "1", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 7 and payload["k_ma"] == "2"
    code2, out2, _ = run(["report", "--n", "7", "--bound", "1", "--format", "json"], capsys)
    assert json.loads(out2) == payload


def test_report_n2_flags_exception(capsys):
    code, out, _ = run(["report", "--n", "2"], capsys)
    assert code == 0
    assert "note (n=2)" in out


def test_report_usage_error(capsys):
    code, _, err = run(["report"], capsys)
    assert code == 1
    assert "usage error" in err


def test_report_bad_n(capsys):
    code, _, err = run(["report", "--n", "1"], capsys)
    assert code == 1


def test_report_injected_bug_exits_2(capsys, monkeypatch):
    import motiondual.primal as primal_mod

    monkeypatch.setattr(primal_mod, "big_d", lambda n, bound: 99)
    code, _, err = run(["report", "--n", "5", "--bound", "1"], capsys)
    assert code == 2
    assert "cross-check failed" in err


# --- graph ---------------------------------------------------------------------


def test_graph_dual_counts(capsys):
    code, out, _ = run(["graph", "--n", "4", "--kind", "dual", "--bound", "1"], capsys)
    assert code == 0
    assert out.count("[shape=ellipse]") == 4
    assert out.count("[shape=box]") == 2


def test_graph_sub_has_isolated_lines(capsys):
    code, out, _ = run(
        ["graph", "--n", "5", "--kind", "sub", "--bound", "1", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    line_ids = {v["id"] for v in payload["ideals"] if v["kind"] == "line"}
    touched = {i for e in payload["edges"] for i in e}
    assert line_ids and not (line_ids & touched)


def test_graph_bound_zero_renders(capsys):
    code, out, _ = run(["graph", "--n", "4", "--kind", "dual", "--bound", "0"], capsys)
    assert code == 0 and out.startswith("digraph")


def test_graph_json_roundtrips(capsys):
    code, out, _ = run(["graph", "--n", "4", "--kind", "dual", "--bound", "1", "--format", "json"], capsys)
    payload = json.loads(out)
    from motiondual.dualspace import dual_model_from_json

    model = dual_model_from_json(payload)
    assert model.n == 4 and model.bound == 1


# --- distance / walk / chain / certify -------------------------------------------


def test_distance_example(capsys):
    code, out, _ = run(["distance", "--n", "9", "0,0,0,0", "1,1,1,1", "--bound", "1"], capsys)
    assert code == 0
    assert out.strip() == "distance: 4"


def test_distance_with_certificates(capsys):
    code, out, _ = run(
        ["distance", "--n", "7", "0,0,0", "1,1,1", "--bound", "1", "--certificates"], capsys
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "distance: 3"
    assert "walk upper bound: 3" in lines[1]
    assert "chain lower bound: 3" in lines[2]


def test_distance_json_roundtrip(capsys):
    code, out, _ = run(
        ["distance", "--n", "5", "0,0", "1,1", "--certificates", "--format", "json"], capsys
    )
    payload = json.loads(out)
    assert payload["distance"] == 2
    assert payload["walk_upper_bound"] == 2
    assert payload["chain_lower_bound"] == 2


def test_distance_malformed_signature(capsys):
    code, _, err = run(["distance", "--n", "5", "0,x", "1,1"], capsys)
    assert code == 1


def test_walk_command(capsys, tmp_path):
    out_file = tmp_path / "walk.json"
    code, _, _ = run(["walk", "--n", "6", "2,1,0", "1,1,1", "--output", str(out_file)], capsys)
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert payload["valid"] is True
    assert len(payload["steps"]) - 1 <= 3


def test_chain_emit_and_recheck(capsys, tmp_path):
    out_file = tmp_path / "chain.json"
    code, _, _ = run(
        ["chain", "--n", "7", "0,0,0", "1,1,1", "--bound", "1", "--output", str(out_file)], capsys
    )
    assert code == 0
    code, out, _ = run(["chain", "--n", "7", "--check", str(out_file)], capsys)
    assert code == 0
    assert "certifies distance >= 3" in out


def test_chain_tampered_file_fails(capsys, tmp_path):
    out_file = tmp_path / "chain.json"
    run(["chain", "--n", "7", "0,0,0", "1,1,1", "--bound", "1", "--output", str(out_file)], capsys)
    payload = json.loads(out_file.read_text())
    payload["sets"][0].extend(payload["sets"][2])  # break non-consecutive disjointness
    out_file.write_text(json.dumps(payload))
    code, _, err = run(["chain", "--n", "7", "--check", str(out_file)], capsys)
    assert code == 2


def test_certify_example(capsys):
    code, out, _ = run(["certify", "--n", "6", "1,0", "2,0", "1,1"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["ok"] is True
    assert payload["report"]["implied_k_bound"] == "3/2"
    assert len(payload["certificate"]["targets"]) == 3


def test_certify_rejects_bad_input(capsys):
    code, _, err = run(["certify", "--n", "6", "1,0", "0,2", "1,1"], capsys)
    assert code == 1  # 0,2 is not weakly decreasing


# --- verify -------------------------------------------------------------------


def test_verify_small_range(capsys):
    code, out, _ = run(
        ["verify", "--n-min", "3", "--n-max", "4", "--bound", "1", "--seed", "7"], capsys
    )
    assert code == 0
    assert "checks passed" in out


def test_verify_seed_deterministic(capsys):
    args = ["verify", "--n-min", "3", "--n-max", "4", "--bound", "1", "--seed", "7", "--format", "json"]
    _, out1, _ = run(args, capsys)
    _, out2, _ = run(args, capsys)
    assert out1 == out2


def test_verify_injected_bug_exits_2(capsys, monkeypatch):
    import motiondual.verification as verification

    def broken(n, bound, rng=None):
        return verification.CheckResult(n, "orc", False, "injected")

    monkeypatch.setattr(verification, "check_orc", broken)
    monkeypatch.setattr(
        verification, "CHECKS", tuple(broken if c.__name__ == "check_orc" else c for c in verification.CHECKS)
    )
    code, out, _ = run(["verify", "--n-min", "3", "--n-max", "3", "--bound", "1"], capsys)
    assert code == 2
    assert "FAIL n=3 orc" in out


def test_verify_env_jobs(capsys, monkeypatch):
    monkeypatch.setenv("MOTIONDUAL_JOBS", "2")
    code, out, _ = run(["verify", "--n-min", "3", "--n-max", "4", "--bound", "1"], capsys)
    assert code == 0


# --- module entry point ----------------------------------------------------------


def test_module_invocation_subprocess():
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.join(REPO, "src")
    proc = subprocess.run(
        [sys.executable, "-m", "motiondual.cli", "report", "--n", "5", "--bound", "1"],
        capture_output=True,
        text=True,
        env=env,
        cwd=REPO,
    )
    assert proc.returncode == 0
    assert "3/2" in proc.stdout
