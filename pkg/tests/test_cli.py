"""Command-line driver: exit codes, schemas, determinism."""

import json

from gl2lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_eval_phi(capsys):
    code, out = run(capsys, "eval-phi", "--p", "2", "--n", "1",
                    "--matrix", "[[2,0],[0,1]]")
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == "3"
    assert rep["schema_version"] == "1"
    code, out = run(capsys, "eval-phi", "--p", "2", "--n", "1",
                    "--matrix", "[[2,0],[0,1]]", "--deformed")
    assert code == 0
    assert "t^2" in json.loads(out)["value"]


def test_tree_commands(capsys):
    code, out = run(capsys, "tree-orbital", "--p", "2", "--n", "1",
                    "--gamma", "[[0,1],[-2,0]]")
    assert code == 0
    assert json.loads(out)["ratio"] == "-3"
    code, out = run(capsys, "tree-fixed-set", "--p", "2",
                    "--gamma", "[[2,1],[0,1]]", "--depth", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["k_tree"] == 0 and rep["nearest_unique"] and rep["connected"]
    code, out = run(capsys, "tree-fixed-set", "--p", "2", "--verify",
                    "--probes", "10")
    assert code == 0
    assert json.loads(out)["summary"]["failed"] == 0


def test_eval_phi_with_prefactor(capsys):
    # p^-1 [[4,1],[0,2]] has k = 1: off-support at level 1, value 3 at level 2
    code, out = run(capsys, "eval-phi", "--p", "2", "--n", "1",
                    "--matrix", "[[4,1],[0,2]]", "--e", "-1")
    assert code == 0 and json.loads(out)["value"] == "0"
    code, out = run(capsys, "eval-phi", "--p", "2", "--n", "2",
                    "--matrix", "[[4,1],[0,2]]", "--e", "-1")
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == "3" and rep["k"] == 1


def test_char_table_and_ss_trace(capsys):
    code, out = run(capsys, "char-table", "--p", "2", "--n", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["group_order"] == 6 and len(rep["classes"]) == 3
    code, out = run(capsys, "ss-trace", "--p", "2", "--n", "1",
                    "--kind", "supersingular")
    assert code == 0
    assert json.loads(out)["value"] == "-3"
    code, out = run(capsys, "ss-trace", "--p", "3", "--n", "1",
                    "--kind", "ordinary", "--a", "2")
    assert json.loads(out)["value"] == "0"


def test_verify_commands_exit_zero(capsys):
    code, out = run(capsys, "verify-norm", "--p", "2", "--r", "2", "--n", "1")
    assert code == 0
    assert json.loads(out)["summary"]["failed"] == 0
    code, out = run(capsys, "verify-exact-seq", "--p", "2", "--r", "2",
                    "--n", "1", "--samples", "5")
    assert code == 0
    code, out = run(capsys, "verify-tower", "--q", "2", "--n", "1",
                    "--samples", "30")
    assert code == 0
    code, out = run(capsys, "verify-orbital", "--q", "2", "--n", "1",
                    "--samples", "20")
    assert code == 0
    code, out = run(capsys, "verify-bc-unit", "--p", "2", "--r", "2",
                    "--j", "1", "--k", "1")
    assert code == 0
    code, out = run(capsys, "verify-cr", "--p", "2", "--n", "1")
    assert code == 0


def test_census_and_boundary(capsys):
    code, out = run(capsys, "census", "--q", "4", "--m", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("a1,a2,a3,a4,a6")
    rep = json.loads(lines[-1])
    assert rep["total"] == "2"
    code, out = run(capsys, "boundary", "--p", "7", "--n", "1", "--m", "3")
    assert code == 0
    assert json.loads(out)["value"] == "384"


def test_byte_determinism(capsys):
    _, out1 = run(capsys, "verify-tower", "--q", "2", "--n", "1",
                  "--samples", "25")
    _, out2 = run(capsys, "verify-tower", "--q", "2", "--n", "1",
                  "--samples", "25")
    assert out1 == out2
    _, out3 = run(capsys, "census", "--q", "4", "--m", "3")
    _, out4 = run(capsys, "census", "--q", "4", "--m", "3")
    assert out3 == out4


def test_usage_errors_exit_two(capsys):
    assert main(["no-such-command"]) == 2
    assert main(["eval-phi", "--p", "2", "--n", "1",
                 "--matrix", "not json"]) == 2
    # p not prime
    assert main(["eval-phi", "--p", "4", "--n", "1",
                 "--matrix", "[[2,0],[0,1]]"]) == 2


def test_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify-norm", "--p", "2", "--r", "2", "--n", "1",
                 "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["summary"]["failed"] == 0
