"""End-to-end checks of the command-line front end.

Everything runs in-process through cli.main so exit codes and emitted
bytes are asserted exactly.
"""

import json

import pytest

from hilbtaut import cli


def run(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# --- chi ---------------------------------------------------------------


def test_chi_spot_values(capsys):
    rc, out, _ = run(capsys, "chi", "--surface", "p2", "--n", "3", "--k", "3",
                     "--L", "2", "--A", "0")
    assert rc == 0 and "chi=56" in out
    rc, out, _ = run(capsys, "chi", "--surface", "p2", "--n", "2", "--k", "3",
                     "--L", "3", "--A", "1")
    assert rc == 0 and "chi=540" in out
    rc, out, _ = run(capsys, "chi", "--surface", "k3", "--n", "1", "--k", "0",
                     "--L", "0", "--A", "0")
    assert rc == 0 and "chi=2" in out


def test_chi_csv_columns_two_points(capsys):
    rc, out, _ = run(capsys, "chi", "--surface", "p1xp1", "--n", "2", "--k", "2",
                     "--L", "1:2", "--A", "0:0", "--format", "csv")
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0] == "surface,n,k,L,A,chi,gr_0,gr_1"
    assert lines[1].startswith("p1xp1,2,2,1:2,0:0,")
    # graded pieces add up to the total column
    cells = lines[1].split(",")
    assert int(cells[5]) == int(cells[6]) + int(cells[7])


def test_chi_csv_no_graded_columns_beyond_two_points(capsys):
    rc, out, _ = run(capsys, "chi", "--surface", "p2", "--n", "3", "--k", "2",
                     "--L", "1", "--A", "0", "--format", "csv")
    assert rc == 0
    assert out.strip().split("\n")[0] == "surface,n,k,L,A,chi"


def test_chi_batch_rows_in_flag_order(capsys):
    rc, out, _ = run(capsys, "chi", "--surface", "p2", "--n", "2", "--k", "2",
                     "--L", "1", "--L", "2", "--A", "0", "--format", "json")
    assert rc == 0
    rows = json.loads(out)["rows"]
    assert [r["L"] for r in rows] == [[1], [2]]


def test_chi_rejects_unsupported_pair(capsys):
    rc, _, err = run(capsys, "chi", "--surface", "p2", "--n", "3", "--k", "7",
                     "--L", "1", "--A", "0")
    assert rc == 2 and "unsupported" in err


def test_chi_rejects_unknown_surface(capsys):
    rc, _, err = run(capsys, "chi", "--surface", "enriques", "--n", "2",
                     "--k", "2", "--L", "1", "--A", "0")
    assert rc == 2 and "error:" in err


def test_chi_loads_surface_model_from_json(capsys, tmp_path):
    model = {"name": "quadric", "rank": 2, "intersection": [[0, 1], [1, 0]],
             "K": [-2, -2], "chiO": 1, "c2": 4}
    path = tmp_path / "quadric.json"
    path.write_text(json.dumps(model))
    rc, out, _ = run(capsys, "chi", "--surface", str(path), "--n", "2",
                     "--k", "3", "--L", "2:2", "--A", "0:0", "--format", "json")
    assert rc == 0
    rc2, out2, _ = run(capsys, "chi", "--surface", "p1xp1", "--n", "2",
                      "--k", "3", "--L", "2:2", "--A", "0:0", "--format", "json")
    assert rc2 == 0
    assert json.loads(out)["rows"][0]["chi"] == json.loads(out2)["rows"][0]["chi"]


# --- kernel / graded ---------------------------------------------------


def test_kernel_spot_vector(capsys):
    rc, out, _ = run(capsys, "kernel", "--n", "2", "--k", "2",
                     "--max-degree", "2", "--invariant")
    assert rc == 0 and "[1, 5, 18]" in out


def test_kernel_full_mode_differs(capsys):
    _, inv, _ = run(capsys, "kernel", "--n", "2", "--k", "2",
                    "--max-degree", "2", "--format", "json")
    _, full, _ = run(capsys, "kernel", "--n", "2", "--k", "2",
                     "--max-degree", "2", "--full", "--format", "json")
    inv_dims = json.loads(inv)["cumulative"]
    full_dims = json.loads(full)["cumulative"]
    assert inv_dims == [1, 5, 18]
    assert all(f >= i for f, i in zip(full_dims, inv_dims))
    assert full_dims != inv_dims


def test_exploratory_gate_and_conjectural_flag(capsys):
    rc, _, err = run(capsys, "kernel", "--n", "3", "--k", "5",
                     "--max-degree", "1")
    assert rc == 2 and "--exploratory" in err
    rc, out, _ = run(capsys, "kernel", "--n", "3", "--k", "5",
                     "--max-degree", "1", "--exploratory", "--format", "json")
    assert rc == 0 and json.loads(out)["conjectural"] is True
    rc, out, _ = run(capsys, "kernel", "--n", "2", "--k", "5",
                     "--max-degree", "1", "--format", "json")
    assert rc == 0 and "conjectural" not in json.loads(out)


def test_graded_totals_match_kernel(capsys):
    rc, out, _ = run(capsys, "graded", "--n", "2", "--k", "2",
                     "--max-degree", "2", "--format", "csv")
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0] == "mu,deg_0,deg_1,deg_2"
    assert lines[-1] == "total,1,5,18"
    assert any(line.startswith("1:1,") for line in lines)


# --- toeplitz / reps ---------------------------------------------------


def test_toeplitz_det_and_minors(capsys):
    rc, out, _ = run(capsys, "toeplitz", "--kind", "T", "--even", "--n", "1",
                     "--m", "3", "--det")
    assert rc == 0 and "det = 4" in out
    rc, out, _ = run(capsys, "toeplitz", "--kind", "T", "--even", "--n", "1",
                     "--m", "3", "--minors", "--format", "json")
    assert rc == 0 and json.loads(out)["minors"] == [2, 3, 4]


def test_toeplitz_rank_and_domain(capsys):
    rc, out, _ = run(capsys, "toeplitz", "--kind", "R", "--l", "2", "--k", "4",
                     "--j", "1", "--format", "json")
    assert rc == 0 and json.loads(out)["rank"] == 3
    rc, _, err = run(capsys, "toeplitz", "--kind", "R", "--l", "9", "--k", "4",
                     "--j", "1")
    assert rc == 2 and "empty matrix" in err


def test_reps_series(capsys):
    rc, out, _ = run(capsys, "reps", "--k", "3")
    assert rc == 0
    assert "3 t^2 + 6 t^3 + 3 t^4" in out
    first = out.strip().split("\n")[0]
    assert first.endswith("3 t^2")


# --- verify ------------------------------------------------------------


def test_verify_suite_passes_and_reports(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "toeplitz", "--format", "json")
    assert rc == 0
    report = json.loads(out)
    assert report["ok"] is True and report["failed"] == 0
    keys = [c["key"] for c in report["cases"]]
    assert keys == sorted(keys)
    assert all(c["status"] == "pass" for c in report["cases"])
    assert all("seconds" in c for c in report["cases"])


def test_verify_echoes_seed(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "chi-consistency",
                     "--seed", "7")
    assert rc == 0 and "[seed 7]" in out


def test_verify_failure_exits_one(capsys, monkeypatch):
    def broken(cfg):
        def boom():
            raise AssertionError("forced failure")
        return [("forced case", boom)]

    monkeypatch.setitem(cli._SUITE_BUILDERS, "toeplitz", broken)
    rc, out, _ = run(capsys, "verify", "--suite", "toeplitz")
    assert rc == 1 and "FAIL" in out and "forced failure" in out


def test_unknown_suite_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


# --- determinism -------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ("chi", "--surface", "p1xp1", "--n", "2", "--k", "4", "--L", "2:1",
     "--A", "1:0", "--format", "csv"),
    ("graded", "--n", "2", "--k", "3", "--max-degree", "3", "--format", "json"),
    ("kernel", "--n", "2", "--k", "3", "--max-degree", "3", "--format", "csv"),
    ("reps", "--k", "4", "--format", "json"),
])
def test_identical_config_identical_bytes(capsys, argv):
    rc1, out1, _ = run(capsys, *argv)
    rc2, out2, _ = run(capsys, *argv)
    assert rc1 == rc2 == 0
    assert out1 == out2
