import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from tripleclosure.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"
SCHEMA = json.loads(resources.files("tripleclosure").joinpath("cli_schema.json").read_text())


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, "--json", *argv)
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def test_closure_chain4(capsys):
    code, out, _ = call(capsys, "closure", "--algo", "fast", DATA / "chain4.triples")
    assert code == 0
    assert out.splitlines() == ["a b | c", "a b | d", "a c | d", "b c | d"]


@pytest.mark.parametrize("algo", ["fast", "baseline", "oracle"])
def test_closure_algos_agree(capsys, algo):
    _, data = call_json(capsys, "closure", "--algo", algo, DATA / "nine_rep.triples")
    assert data["size"] == 21


def test_closure_emit_lmax(capsys):
    code, out, _ = call(capsys, "closure", "--emit-lmax", DATA / "chain4.triples")
    assert code == 0 and "a,b || c" in out and "a,b,c || d" in out


def test_minrep_nine(capsys):
    code, out, _ = call(capsys, "minrep", "--certify", DATA / "nine.triples")
    assert code == 0
    body = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert len(body) == 8
    assert "# certified minimal: yes" in out


def test_minrep_weights(capsys):
    _, data = call_json(capsys, "minrep", "--weights", DATA / "chain4.weights", DATA / "chain4.triples")
    assert sorted(data["minrep"]) == ["a b | c", "b c | d"] and data["total_weight"] == 5


def test_check_exit_codes(capsys, tmp_path):
    assert call(capsys, "check", DATA / "empty.triples")[0] == 0
    assert call(capsys, "check", DATA / "nine.triples")[0] == 0
    code, out, _ = call(capsys, "check", DATA / "inconsistent.triples")
    assert code == 2 and out.strip() == "inconsistent"
    bad = tmp_path / "bad.triples"
    bad.write_text("a b c\n")
    assert call(capsys, "check", bad)[0] == 1
    assert call(capsys, "check", tmp_path / "missing.triples")[0] == 1


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == 1
    assert call(capsys, "matroid")[0] == 1


def test_inconsistent_exit(capsys):
    assert call(capsys, "build", DATA / "inconsistent.triples")[0] == 2
    code, data = call_json(capsys, "closure", DATA / "inconsistent.triples")
    assert code == 2 and data["status"] == "inconsistent"


def test_check_dot(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    assert call(capsys, "check", "--dot", dot, DATA / "chain4.triples")[0] == 0
    text = dot.read_text()
    assert text.startswith("graph") and '"a" -- "b"' in text


def test_build(capsys):
    code, out, _ = call(capsys, "build", DATA / "chain4.triples")
    assert code == 0 and out.strip() == "(((a,b),c),d);"


def test_identify(capsys):
    _, data = call_json(
        capsys, "identify", "--tree", "((((a,b,c,g),h),d,e,f),i);", DATA / "nine_rep.triples"
    )
    assert data["b_lower_bound"] == 9 and data["identifies"] is False and data["min_rep_size"] == 8


def test_matroid(capsys):
    code, data = call_json(capsys, "matroid", "--check-exchange", "--trials", 30, DATA / "nine.triples")
    assert code == 0 and data["sizes"] == [8] and data["exchange"]["ok"]
    code, data = call_json(capsys, "matroid", "--demo-nonclosure")
    assert code == 0 and data["nonclosure"]["violated"]


def test_lmax(capsys):
    _, data = call_json(capsys, "lmax", DATA / "nine.triples")
    assert len(data["lmax"]) == 5 and len(data["per_triple"]) == 10


def test_oracle(capsys):
    _, data = call_json(capsys, "oracle", "minreps", DATA / "chain4.triples")
    assert sorted(map(sorted, data["minimal_representatives"])) == [["a b | c", "a c | d"], ["a b | c", "b c | d"]]
    _, data = call_json(capsys, "oracle", "span", DATA / "chain4.triples")
    assert data["trees"] == ["(((a,b),c),d);"]
    _, data = call_json(capsys, "oracle", "closure", DATA / "chain4.triples")
    assert len(data["closure"]) == 4


def test_bench_csv(capsys, tmp_path):
    out = tmp_path / "b.csv"
    assert call(capsys, "bench", "--grid", "4,6", "--reps", 1, "--out", out)[0] == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "leaves,triples,algo,median_ns,closure_size" and len(lines) == 5
    _, data = call_json(capsys, "bench", "--grid", "5", "--reps", 1)
    assert {r["algo"] for r in data["rows"]} == {"fast", "baseline"}
    assert call(capsys, "bench", "--grid", "x")[0] == 1


@pytest.mark.slow
def test_quartet_demo(capsys):
    code, data = call_json(capsys, "quartet-demo")
    assert code == 0 and data["sizes"] == [4, 5] and data["no_matroid"]


def test_json_error_is_schema_valid(capsys, tmp_path):
    bad = tmp_path / "bad.triples"
    bad.write_text("a a | b\n")
    code, data = call_json(capsys, "closure", bad)
    assert code == 1 and data["status"] == "error"


def test_json_flag_after_subcommand(capsys):
    code, out, _ = call(capsys, "build", "--json", DATA / "chain4.triples")
    assert json.loads(out)["newick"] == "(((a,b),c),d);"
