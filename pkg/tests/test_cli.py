import cmath
import json
import math
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from qkernel.cli import format_complex, main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text,value", [
    ("1.5", 1.5), ("-2", -2), ("0.3-0.2i", 0.3 - 0.2j), ("+0.3+2e-1i", 0.3 + 0.2j),
    ("-2i", -2j), ("+i", 1j), ("1e-3", 1e-3), (".5", 0.5),
    ("exp(i pi/2)", 1j), ("0.5exp(i*pi/7)", 0.5 * cmath.exp(1j * math.pi / 7)), ("exp(i0.4)", cmath.exp(0.4j)),
    ("exp(i -pi)", -1),
])
def test_parse_complex(text, value):
    assert abs(parse_complex(text) - value) < 1e-15


@pytest.mark.parametrize("text", ["", "i", "abc", "1+", "1.2.3", "2i3", "exp(pi)", "1 + 2i", "0.3i0.2"])
def test_parse_complex_rejects(text):
    from qkernel.cli import UsageError

    with pytest.raises(UsageError):
        parse_complex(text)


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_format_roundtrip(z):
    assert parse_complex(format_complex(z)) == z + 0.0


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "qpoch", "a=0", "q=0.5", "n=5")
    assert code == 0 and out.splitlines()[0] == "1"
    code, out, _ = run(capsys, "eval", "theta", "x=0.25", "q=0.5")
    assert code == 0 and abs(parse_complex(out.splitlines()[0])) < 1e-12
    code, out, _ = run(capsys, "eval", "aw", "n=0", "x=0.3", "a=0.1", "b=0.2", "c=0.3", "d=0.4", "q=0.5")
    assert code == 0 and out.splitlines()[0] == "1"
    assert out.splitlines()[1].startswith("terms=")


def test_eval_other_kinds(capsys):
    code, out, _ = run(capsys, "eval", "phi", "numer=0.3,0.4", "denom=0.5", "q=0.5", "z=0.2")
    assert code == 0
    code, out, _ = run(capsys, "eval", "wphi", "b=0.3", "tail=0.1,0.2,0.12", "q=0.5", "z=0.5")
    assert code == 0
    code, out, _ = run(capsys, "eval", "cdqh", "n=2", "x=0.3", "a=0.1", "b=0.2", "c=0.3", "q=0.5exp(i pi/7)")
    assert code == 0 and "i" in out.splitlines()[0]


@pytest.mark.parametrize("argv", [
    ["eval", "qpoch", "a=zz", "q=0.5"],
    ["eval", "qpoch", "q=0.5"],
    ["eval", "qpoch", "a=0.1", "q=0.5", "bogus=1"],
    ["eval", "aw", "n=1.5", "x=0.3", "a=0.1", "b=0.2", "c=0.3", "d=0.4", "q=0.5"],
    ["eval", "aw", "n=1", "x=0.3i", "a=0.1", "b=0.2", "c=0.3", "d=0.4", "q=0.5"],
    ["eval", "nosuchkind"],
    ["verify"],
    ["verify", "--cases", "AWint", "--all"],
    ["verify", "--cases", "AWint", "--samples", "0"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err


@pytest.mark.parametrize("argv,name", [
    (["eval", "qpoch", "a=0.1", "q=1.5"], "DomainError"),
    (["eval", "theta", "x=0", "q=0.5"], "DomainError"),
    (["eval", "phi", "numer=0.1,0.2,0.3", "denom=0.4", "q=0.5", "z=0.5"], "Divergent"),
])
def test_eval_errors(capsys, argv, name):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith(name)


def test_unknown_case_before_work(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, err = run(capsys, "verify", "--cases", "AWint,nosuchcase", "--out", str(out_path))
    assert code == 1 and "nosuchcase" in err and out == ""
    assert not out_path.exists()


def test_verify_and_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--cases", "AWint", "--seed", "42", "--samples", "10", "--out", str(path))
    assert code == 0 and out.startswith("PASS 10/10 AWint")
    report = json.loads(path.read_text())
    assert list(report) == ["meta", "records"]
    assert report["meta"]["seed"] == 42 and "policies" in report["meta"] and "version" in report["meta"]
    assert len(report["records"]) == 10
    rec = report["records"][0]
    assert list(rec)[:5] == ["case", "index", "params", "lhs", "rhs"]
    assert len(rec["lhs"]) == 2 and rec["params"]["q"] == [0.3, 0.0]

    code, out, _ = run(capsys, "report", str(path))
    lines = out.splitlines()
    assert code == 0 and lines[0].split() == ["case", "n", "pass_rate", "worst_rel", "median_terms", "median_nodes"]
    assert len(lines) == 2 and lines[1].split()[:3] == ["AWint", "10", "1.000"]


def test_verify_failure_exit_code(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--cases", "AWint,NRint", "--samples", "2", "--tol", "1e-30", "--out", str(path))
    assert code == 3 and "FAIL 0/2 AWint" in out
    assert len(json.loads(path.read_text())["records"]) == 4


def test_q_override(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--cases", "AWint", "--samples", "3", "--q", "0.4-0.1i", "--out", str(path))
    assert code == 0
    assert all(r["params"]["q"] == [0.4, -0.1] for r in json.loads(path.read_text())["records"])


def test_csv_report(capsys, tmp_path):
    path = tmp_path / "r.csv"
    code, _, _ = run(capsys, "verify", "--cases", "NRint", "--samples", "3", "--format", "csv", "--out", str(path))
    lines = path.read_text().splitlines()
    assert code == 0 and lines[0].startswith("case,index,passed,lhs_re,lhs_im,rhs_re,rhs_im")
    assert len(lines) == 4


def test_report_edge_cases(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"meta": {}, "records": []}))
    code, out, _ = run(capsys, "report", str(empty))
    assert code == 0 and len(out.splitlines()) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "report", str(bad))[0] == 1
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"records": [{"case": "x"}]}))
    assert run(capsys, "report", str(wrong))[0] == 1
    assert run(capsys, "report", str(tmp_path / "missing.json"))[0] == 1


def test_deterministic_and_parallel_identical(capsys, tmp_path):
    paths = [tmp_path / f"r{i}.json" for i in range(3)]
    args = ["verify", "--cases", "AWint,G-sym,genfun2ask", "--samples", "3", "--seed", "9"]
    run(capsys, *args, "--out", str(paths[0]))
    run(capsys, *args, "--out", str(paths[1]))
    run(capsys, *args, "--jobs", "3", "--out", str(paths[2]))
    assert paths[0].read_bytes() == paths[1].read_bytes() == paths[2].read_bytes()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qkernel", "eval", "qpoch", "a=0", "q=0.5", "n=5"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "1"
    res = subprocess.run([sys.executable, "-m", "qkernel", "list"], capture_output=True, text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 42
