import json

import numpy as np
import pytest

from pcmaxioms import ToleranceConfig, build_matrix, is_consistent, random_matrix
from pcmaxioms.cli import main
from pcmaxioms.io import parse_matrix

from conftest import EXAMPLE_41_FINAL, PROP32_B


@pytest.fixture
def example_csv(tmp_path):
    p = tmp_path / "ex.csv"
    p.write_text("1,1,1,16\n1,1,1,1\n1,1,1,1\n1/16,1,1,1\n")
    return str(p)


@pytest.fixture
def prop32_csv(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("1,1,1,8\n1,1,1,1\n1,1,1,1\n1/8,1,1,1\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_weights_llsm(capsys, example_csv):
    code, out, _ = run(capsys, "weights", example_csv)
    assert code == 0 and out.strip() == "0.444444 0.222222 0.222222 0.111111"


@pytest.mark.parametrize("method", ["llsm", "em", "flat"])
def test_weights_all_ones(capsys, method):
    code, out, _ = run(capsys, "weights", "--inline", "1,1,1;1,1,1;1,1,1", "--method", method)
    assert code == 0 and out.splitlines()[0] == "0.333333 0.333333 0.333333"


def test_weights_em(capsys, prop32_csv):
    code, out, _ = run(capsys, "weights", prop32_csv, "--method", "em", "--precision", "4")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "0.4269 0.2182 0.2182 0.1367"
    assert lines[1].startswith("lambda_max") and lines[2].startswith("iterations")


def test_weights_json(capsys, prop32_csv):
    code, out, _ = run(capsys, "weights", prop32_csv, "--method", "em", "--format", "json")
    obj = json.loads(out)
    assert obj["method"] == "em" and obj["lambda_max"] >= 4 and len(obj["weights"]) == 4


def test_weights_stdin(capsys, monkeypatch):
    import io as stdio
    monkeypatch.setattr("sys.stdin", stdio.StringIO('{"n": 2, "upper": [3]}'))
    code, out, _ = run(capsys, "weights", "-", "--format", "csv")
    assert code == 0 and out.strip() == "0.750000,0.250000"


def test_bad_input_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("1,2\n2,1\n")
    code, out, err = run(capsys, "weights", str(p))
    assert code == 2 and out == "" and "(1,2)" in err
    code, _, err = run(capsys, "weights", "--inline", "1,zz;1,1")
    assert code == 2 and "row 1, column 2" in err
    code, _, _ = run(capsys, "weights", str(tmp_path / "missing.csv"))
    assert code == 2
    code, _, _ = run(capsys, "weights")
    assert code == 2


def test_bad_flags_exit_2(capsys, example_csv):
    with pytest.raises(SystemExit) as exc:
        main(["check", "saaty", "co"])
    assert exc.value.code == 2
    assert main(["weights", example_csv, "--precision", "30"]) == 2
    assert main(["weights", example_csv, "--tol-weights", "2"]) == 2


def test_consistify_text_and_json(capsys, example_csv):
    code, out, _ = run(capsys, "consistify", example_csv)
    assert code == 0 and out.count("step ") == 3 and "(identity)" in out
    code, out, _ = run(capsys, "consistify", example_csv, "--format", "json")
    obj = json.loads(out)
    assert [s["alpha"] for s in obj["steps"]] == [2.0, 2.0, 1.0]
    assert build_matrix(obj["final"]["rows"]) == build_matrix(EXAMPLE_41_FINAL)
    code, out, _ = run(capsys, "consistify", example_csv, "--format", "json", "--no-identity-steps")
    assert len(json.loads(out)["steps"]) == 2


def test_consistify_consistent_input(capsys):
    code, out, _ = run(capsys, "consistify", "--inline", "1,2,4;1/2,1,2;1/4,1/2,1", "--no-identity-steps")
    assert code == 0 and "step " not in out


def test_consistify_random_five(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "5", "--random", "1", "7", "--format", "json")
    p = tmp_path / "r.json"
    p.write_text(out)
    code, out, _ = run(capsys, "consistify", str(p), "--format", "json")
    obj = json.loads(out)
    assert code == 0 and len(obj["steps"]) == 6
    assert is_consistent(build_matrix(obj["final"]["rows"]))


def test_consistify_too_small(capsys):
    code, _, err = run(capsys, "consistify", "--inline", "1,2;1/2,1")
    assert code == 4 and err


def test_transform(capsys, prop32_csv):
    code, out, _ = run(capsys, "transform", prop32_csv, "--triad", "1", "2", "4", "--alpha", "2",
                       "--format", "json")
    assert code == 0 and build_matrix(json.loads(out)["rows"]) == build_matrix(PROP32_B)
    code, out, _ = run(capsys, "transform", prop32_csv, "--triad", "1", "2", "4", "--alpha", "1",
                       "--precision", "17")
    assert parse_matrix(out) == build_matrix([[1, 1, 1, 8], [1, 1, 1, 1], [1, 1, 1, 1], [1 / 8, 1, 1, 1]])


def test_transform_local(capsys, example_csv):
    code, out, _ = run(capsys, "transform", example_csv, "--triad", "1", "2", "4", "--local")
    assert code == 0 and out.splitlines()[0] == "# alpha = 2.519842"
    # six printed decimals only reproduce reciprocity to about 1e-6
    B = parse_matrix(out, ToleranceConfig(reciprocity_tol=1e-5))
    assert B[0, 1] * B[1, 3] == pytest.approx(B[0, 3], rel=1e-5)


def test_transform_errors(capsys, example_csv):
    assert main(["transform", example_csv, "--triad", "1", "1", "2", "--alpha", "2"]) == 2
    assert main(["transform", example_csv, "--triad", "1", "2", "5", "--alpha", "2"]) == 2
    assert main(["transform", example_csv, "--triad", "1", "2", "3", "--alpha", "-1"]) == 2


@pytest.mark.parametrize("argv,code", [
    (["check", "llsm", "it", "--trials", "200"], 0),
    (["check", "em", "it"], 1),
    (["check", "flat", "it", "--trials", "200"], 0),
    (["check", "flat", "co", "--trials", "20"], 1),
    (["check", "em", "co", "--trials", "50"], 0),
    (["check", "llsm", "all", "--trials", "50"], 0),
    (["check", "em", "char", "--trials", "20"], 1),
])
def test_check_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_check_json_report(capsys):
    code, out, _ = run(capsys, "check", "em", "it", "--trials", "10", "--format", "json")
    rep = json.loads(out)
    assert code == 1 and rep["verdict"] == "fail" and rep["axiom"] == "IT"
    assert rep["witness"]["transform"] == {"triad": [1, 2, 4], "alpha": 2.0}


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", "--trials", "50", "--format", "json")
    table = json.loads(out)
    verdicts = {m: (r["CO"]["verdict"], r["IT"]["verdict"]) for m, r in table.items()}
    assert verdicts == {"llsm": ("pass", "pass"), "em": ("pass", "fail"), "flat": ("fail", "pass")}
    code, out, _ = run(capsys, "demo", "--trials", "20")
    assert code == 0 and "witness" in out


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "4", "--consistent", "4", "2", "2", "1")
    assert code == 0 and parse_matrix(out) == build_matrix(EXAMPLE_41_FINAL)
    code, out, _ = run(capsys, "gen", "3", "--random", "0", "0", "--precision", "17")
    assert is_consistent(parse_matrix(out))
    code, out, _ = run(capsys, "gen", "5", "--random", "1", "7", "--format", "csv", "--precision", "17")
    assert parse_matrix(out).n == 5
    assert main(["gen", "1", "--random", "0", "0"]) == 2
    assert main(["gen", "3", "--consistent", "1", "2"]) == 2
    assert main(["gen", "2", "--consistent", "1", "-2"]) == 2


def test_emitted_matrices_round_trip(capsys):
    for fmt in ("json", "csv", "text"):
        _, out, _ = run(capsys, "gen", "6", "--random", "1.5", "3", "--format", fmt, "--precision", "17")
        assert np.array_equal(parse_matrix(out).entries, random_matrix(6, 1.5, 3).entries)


def test_weights_agree_with_consistified(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "6", "--random", "1", "5", "--format", "json")
    src = tmp_path / "m.json"
    src.write_text(out)
    _, direct, _ = run(capsys, "weights", str(src))
    _, final_csv, _ = run(capsys, "consistify", str(src), "--format", "csv", "--precision", "17")
    fin = tmp_path / "final.csv"
    fin.write_text(final_csv)
    _, via_trace, _ = run(capsys, "weights", str(fin))
    assert direct == via_trace
