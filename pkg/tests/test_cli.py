import json
import subprocess
import sys

import pytest

from symflex.cli import main


@pytest.fixture
def docs_dir(tmp_path):
    for name in ("fig2", "fig3", "fig4_left", "fig4_right", "c4_antipodal", "c4_axial", "walkindep", "fig6"):
        assert main(["fixtures", name, "-o", str(tmp_path / f"{name}.json")]) == 0
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_fig2(capsys, docs_dir):
    code, out, _ = run(capsys, "enumerate", "pseudo-rs", docs_dir / "fig2.json", "--up-to-conjugation",
                       "--json", "--classify")
    data = json.loads(out)
    assert code == 0 and data["count"] == 5
    assert set(data["status"]) == {"RS_NoCycle"}


def test_check_rs_fig4_left(capsys, docs_dir):
    code, out, _ = run(capsys, "--json", "check", "rs", docs_dir / "fig4_left.json", "--colouring", "c0")
    assert code == 1 and json.loads(out)["status"] == "PseudoRSOnly"


def test_check_variants(capsys, docs_dir):
    fig2 = docs_dir / "fig2.json"
    assert run(capsys, "check", "pseudo-rs", fig2, "--colouring", "c0")[0] == 0
    # NAC-colourings are two-colourings; gold is an input error
    assert run(capsys, "check", "nac", fig2, "--colouring", "c0")[0] == 2
    c4 = json.loads((docs_dir / "c4_antipodal.json").read_text())
    c4["colourings"]["bad"] = {"1-2": "red", "2-3": "red", "3-4": "red", "1-4": "blue"}
    path = docs_dir / "c4_extra.json"
    path.write_text(json.dumps(c4))
    assert run(capsys, "check", "nac", path, "--colouring", "c0")[0] == 0
    code, out, _ = run(capsys, "check", "nac", path, "--colouring", "bad", "--json")
    assert code == 1 and json.loads(out)["reason"] == "Cycle"
    assert run(capsys, "check", "cartesian", fig2, "--colouring", "c1")[0] == 0
    assert run(capsys, "check", "cartesian", fig2, "--colouring", "c0")[0] == 1
    assert run(capsys, "check", "rs", fig2, "--colouring", "c3")[0] == 0


def test_missing_colouring_is_error(capsys, docs_dir):
    code, out, _ = run(capsys, "check", "rs", docs_dir / "fig2.json", "--colouring", "zz", "--json")
    assert code == 2 and json.loads(out)["exit"] == 2
    code, _, err = run(capsys, "check", "rs", docs_dir / "fig2.json")
    assert code == 2 and "--colouring" in err


def test_truncation_exit_code(capsys, docs_dir):
    code, out, _ = run(capsys, "check", "rs", docs_dir / "fig3.json", "--colouring", "c0",
                       "--cap-cycles", "2", "--json")
    assert code == 3 and json.loads(out)["status"] == "UnknownTruncated"
    code, out, _ = run(capsys, "enumerate", "rs", docs_dir / "fig3.json", "--cap-cycles", "2", "--json")
    assert code == 3 and json.loads(out)["error"] == "TruncatedSearch"


def test_budget_flag_and_env(capsys, docs_dir, monkeypatch):
    code, out, _ = run(capsys, "enumerate", "pseudo-rs", docs_dir / "fig3.json", "--budget", "5", "--json")
    assert code == 2 and json.loads(out)["error"] == "BudgetExceeded"
    monkeypatch.setenv("SYMFLEX_BUDGET", "5")
    code, out, _ = run(capsys, "enumerate", "pseudo-rs", docs_dir / "fig2.json", "--json")
    assert code == 2


def test_closure_and_verdict(capsys, docs_dir):
    code, out, _ = run(capsys, "closure", docs_dir / "fig6.json", "--json")
    assert code == 0 and json.loads(out)["added"] == ["X-a", "X-b"]
    code, out, _ = run(capsys, "verdict", docs_dir / "fig4_left.json", "--json")
    assert code == 1 and json.loads(out)["status"] == "NoRS"
    code, out, _ = run(capsys, "verdict", docs_dir / "fig4_right.json", "--json")
    assert code == 0 and json.loads(out)["status"] == "HasRS"
    code, _, err = run(capsys, "closure", docs_dir / "c4_axial.json")
    assert code == 0 and "warning" in err


def test_flex_verify_sample_export(capsys, docs_dir, tmp_path):
    flex_path = tmp_path / "flex.json"
    code, _, _ = run(capsys, "flex", "grid", docs_dir / "c4_antipodal.json", "--colouring", "c0",
                     "--seed", "1", "-o", flex_path)
    assert code == 0
    code, out, _ = run(capsys, "verify", flex_path, "--json")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "sample", flex_path, "--n", "3")
    assert code == 0 and len(json.loads(out)["samples"]) == 3
    csv_path = tmp_path / "f.csv"
    code, _, _ = run(capsys, "export", flex_path, "--csv", csv_path, "--frames", "4",
                     "--svg", tmp_path / "svg", "--report", tmp_path / "r.png")
    assert code == 0
    assert len(csv_path.read_text().splitlines()) == 1 + 16
    assert len(list((tmp_path / "svg").glob("*.svg"))) == 4
    assert (tmp_path / "r.png").stat().st_size > 0
    assert run(capsys, "export", flex_path, "--csv", csv_path, "--frames", "0")[0] == 2


def test_flex_negative_results(capsys, docs_dir):
    code, out, _ = run(capsys, "flex", "grid", docs_dir / "fig4_left.json", "--colouring", "c0", "--json")
    assert code == 1 and json.loads(out)["error"] == "NotRSNoCycle"


def test_flex_double_and_walkindep(capsys, docs_dir, tmp_path):
    out_path = tmp_path / "d.json"
    code, _, _ = run(capsys, "flex", "double", docs_dir / "fig3.json", "--colouring", "c0", "--with", "c1",
                     "-o", out_path)
    assert code == 0
    code, out, _ = run(capsys, "verify", out_path, "--json", "--samples", "200")
    report = json.loads(out)
    assert code == 0 and report["axis_residual"] <= 1e-9
    code, out, _ = run(capsys, "flex", "walkindep", docs_dir / "walkindep.json")
    assert code == 0 and json.loads(out)["kind"] == "walkindep"


def test_fixtures_list(capsys):
    code, out, _ = run(capsys, "fixtures", "--list")
    assert code == 0 and "fig2" in out.split() and "strip" in out.split()
    code, out, _ = run(capsys, "fixtures", "strip", "--m", "2", "--n", "1")
    assert code == 0 and json.loads(out)["name"] == "strip-2x1"
    assert run(capsys, "fixtures", "nothing")[0] == 2


def test_schema_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": ["1", "2"], "edges": [["1", "2"]], "sigma": {"5": "1"}}))
    code, out, _ = run(capsys, "--json", "enumerate", "nac", bad)
    assert code == 2 and "/sigma/5" in json.loads(out)["message"]


def test_pipeline_through_stdin(docs_dir):
    flex = subprocess.run([sys.executable, "-m", "symflex", "flex", "grid", str(docs_dir / "c4_antipodal.json"),
                           "--colouring", "c0", "--seed", "1"], capture_output=True, text=True, check=True)
    verify = subprocess.run([sys.executable, "-m", "symflex", "verify"], input=flex.stdout,
                            capture_output=True, text=True)
    assert verify.returncode == 0, verify.stderr
