import json
import subprocess
import sys

import numpy as np
import pytest

from kyfanlp.cli import main
from kyfanlp.matrix_io import MatrixFileError, dumps, load_matrix, parse_matrix, save_matrix
from kyfanlp.sampling import random_hermitian, random_psd


def write(tmp_path, name, H):
    path = tmp_path / name
    save_matrix(path, H)
    return str(path)


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


# -- matrix files ----------------------------------------------------------------

def test_matrix_round_trip(tmp_path):
    H = random_hermitian(4, 8)
    assert np.array_equal(load_matrix(write(tmp_path, "h.json", H)), H)


def test_real_matrix_omits_imaginary_part(tmp_path):
    path = write(tmp_path, "r.json", np.diag([1.0, 2.0]))
    assert "im" not in json.loads(open(path).read())


def test_seventeen_digit_floats():
    assert dumps({"x": 0.1}) == '{"x": 0.10000000000000001}'
    assert dumps([1, True, None, float("nan")]) == "[1, true, null, null]"


@pytest.mark.parametrize("obj", [
    {"re": [[1]]},
    {"d": 2, "re": [[1, 0]]},
    {"d": 2, "re": [[1, 2], [0, 1]]},
    {"d": 1, "re": [["a"]]},
    {"d": 0, "re": []},
    [1, 2],
])
def test_bad_matrix_files(obj):
    with pytest.raises(MatrixFileError):
        parse_matrix(obj)


def test_small_asymmetry_is_tolerated():
    H = parse_matrix({"d": 2, "re": [[1, 2 + 1e-10], [2, 1]]})
    assert np.allclose(H, H.conj().T)


# -- subcommands -------------------------------------------------------------------

def test_sk(tmp_path, capsys):
    path = write(tmp_path, "a.json", np.diag([3.0, 1.0, 2.0]))
    code, out = run(["sk", path, "--k", "2", "--json"], capsys)
    assert code == 0 and json.loads(out.out)["s_k"] == 5


def test_ukbound_and_table(tmp_path, capsys):
    a = write(tmp_path, "a.json", random_hermitian(4, 1))
    b = write(tmp_path, "b.json", random_hermitian(4, 2))
    table = tmp_path / "t.json"
    code, out = run(["ukbound", a, b, "--k", "2", "--table-out", str(table), "--json"], capsys)
    rep = json.loads(out.out)
    assert code == 0 and rep["status"] == "pass"
    assert rep["s_k_sum"] - 1e-7 <= rep["u_k"] <= rep["s_k_separate"] + 1e-7
    assert np.array(json.loads(table.read_text())["alpha"]).shape == (4, 4)


def test_alignment_text(tmp_path, capsys):
    a = write(tmp_path, "a.json", random_hermitian(3, 1))
    code, out = run(["alignment", a, a, "--k", "1"], capsys)
    assert code == 0 and "bounds: pass" in out.out


def test_staggered(tmp_path, capsys):
    a = write(tmp_path, "a.json", np.diag([1.0, 1, 0, 0]))
    b = write(tmp_path, "b.json", np.diag([0.0, 1, 1, 0]))
    code, out = run(["staggered", a, b, "--k", "2", "--l1", "2", "--l2", "2", "--json"], capsys)
    rep = json.loads(out.out)
    assert code == 0 and rep["alpha"] == 3 and rep["bound"] == 3 and rep["lp_value"] == 3


def test_staggered_precondition_is_input_error(tmp_path, capsys):
    a = write(tmp_path, "a.json", np.diag([3.0, 2, 1]))
    code, out = run(["staggered", a, a, "--k", "1", "--l1", "1", "--l2", "1"], capsys)
    assert code == 2 and "error" in out.err


def test_sep_fan(tmp_path, capsys):
    paths = [write(tmp_path, f"{n}.json", random_psd(2, s)) for s, n in enumerate(["b1", "c1", "b2", "c2"])]
    code, out = run(["sep-fan", *paths], capsys)
    assert code == 0 and "pass" in out.out
    neg = write(tmp_path, "neg.json", -np.eye(2))
    code, _ = run(["sep-fan", paths[0], paths[1], neg, paths[3]], capsys)
    assert code == 2


def test_counterexamples(capsys):
    code, out = run(["--json", "counterexamples"], capsys)
    rep = json.loads(out.out)
    assert code == 0
    assert rep["indefinite"]["first_violation"] == 1
    assert rep["one_sided"]["difference"] < -0.05


def test_diag_tight_and_spin(capsys):
    code, out = run(["diag-tight", "--seed", "4", "--trials", "5", "--dims", "3,4", "--json"], capsys)
    assert code == 0 and json.loads(out.out)["status"] == "pass"
    code, out = run(["spin-align2", "--seed", "4", "--trials", "5", "--dim", "3"], capsys)
    assert code == 0 and "pass" in out.out


def test_campaign_violation_exit_code(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"task": "sandwich", "seed": 1, "trials": 3, "dims": [3], "corrupt_rhs": True}))
    code, out = run(["campaign", "--config", str(cfg), "--json"], capsys)
    rep = json.loads(out.out)
    assert code == 1 and rep["status"] == "fail" and len(rep["violations"]) == 3


def test_campaign_output_is_reproducible(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"task": "flag-invariance", "trials": 3, "dims": [4]}))
    _, first = run(["--seed", "8", "campaign", "--config", str(cfg), "--json"], capsys)
    _, second = run(["campaign", "--config", str(cfg), "--seed", "8", "--json"], capsys)
    assert first.out == second.out


@pytest.mark.parametrize("argv", [
    ["sk", "/nonexistent.json", "--k", "1"],
    ["campaign", "--config", "/nonexistent.json"],
])
def test_missing_files(argv, capsys):
    assert main(argv) == 2


def test_bad_config_and_range(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"task": "diag-tight", "dims": [12]}))
    assert main(["campaign", "--config", str(cfg)]) == 2
    a = write(tmp_path, "a.json", np.eye(2))
    assert main(["sk", a, "--k", "3"]) == 2
    b = write(tmp_path, "b.json", np.eye(3))
    assert main(["ukbound", a, b, "--k", "1"]) == 2


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "kyfanlp.cli", "sk"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kyfanlp.cli", "counterexamples"], capture_output=True, text=True)
    assert proc.returncode == 0 and "fails at k = 1" in proc.stdout
