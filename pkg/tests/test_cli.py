import io
import json
import math
import subprocess
import sys

import pytest

from boundary_schwarz.cli import CSV_COLUMNS, main

Z_HALF = '{"kind":"blaschke","zeros":[{"re":0,"im":0},{"re":0.5,"im":0}]}'
Z_ROT = '{"kind":"blaschke","zeros":[{"re":0,"im":0},{"re":0,"im":0.5}]}'


@pytest.fixture
def map_file(tmp_path):
    def write(text):
        path = tmp_path / "map.json"
        path.write_text(text)
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_and_derivative(capsys, map_file):
    path = map_file(Z_ROT)
    code, out, _ = run(capsys, "eval", "--map", path, "--z", "1,0")
    value = json.loads(out)
    assert code == 0 and value["re"] == pytest.approx(1) and value["im"] == pytest.approx(0, abs=1e-15)
    code, out, _ = run(capsys, "derivative", "--map", path, "--z", "0,0")
    value = json.loads(out)
    assert (value["re"], value["im"]) == pytest.approx((0.4, -0.3))


def test_stdin_map(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(Z_HALF.encode())))
    code, out, _ = run(capsys, "eval", "--map", "-", "--z=-0.5,0")
    assert code == 0
    assert json.loads(out)["re"] == pytest.approx(-0.5 * -1 / 1.25)


def test_bounds_formats(capsys, map_file):
    path = map_file(Z_HALF)
    code, out, _ = run(capsys, "bounds", "--map", path)
    rep = json.loads(out)
    assert code == 0 and rep["actual"] == pytest.approx(4) and rep["equality_frolova"]
    assert rep["extremal_params"]["a"] == pytest.approx(0.5)

    code, out, _ = run(capsys, "bounds", "--map", path, "--format", "csv")
    header, row = out.strip().split("\n")
    assert header.split(",") == CSV_COLUMNS
    fields = dict(zip(CSV_COLUMNS, row.split(",")))
    assert float(fields["frolova"]) == pytest.approx(4) and fields["eq3"] == "true" and fields["eq5"] == "false"

    code, out, _ = run(capsys, "bounds", "--map", path, "--format", "text")
    assert code == 0 and "bound_frolova: 4.0" in out


def test_full_precision_output(capsys, map_file):
    code, out, _ = run(capsys, "bounds", "--map", map_file(Z_ROT))
    rep = json.loads(out)
    assert rep["bound_frolova"] == 2 / 1.4


def test_extremal(capsys):
    code, out, _ = run(capsys, "extremal", "--c", "0.5,0", "--a", "0")
    assert code == 0 and json.loads(out) == {"kind": "extremal", "c": {"re": 0.5, "im": 0.0}, "a": 0.0}
    code, out, _ = run(capsys, "extremal", "--c", "0,0.5", "--a=-0.5", "--verify")
    res = json.loads(out)
    assert code == 0 and res["equality"] == {"eq3": True, "eq5": True, "eq2": False}
    code, _, err = run(capsys, "extremal", "--c", "0.5,0", "--a", "1.0")
    assert code == 2 and "a must lie" in err


def test_julia(capsys, map_file):
    code, out, _ = run(capsys, "julia", "--map", map_file(Z_HALF), "--samples", "500", "--seed", "4")
    res = json.loads(out)
    assert code == 0 and res["alpha"] == pytest.approx(4) and res["max_violation"] < 0
    assert not res["equality_everywhere"]
    # an alpha that is too small breaks the inequality
    code, out, _ = run(capsys, "julia", "--map", map_file(Z_HALF), "--alpha", "1", "--samples", "500")
    assert code == 1


def test_fixed_points(capsys, map_file):
    code, out, _ = run(capsys, "fixed-points", "--map", map_file('{"kind":"blaschke","zeros":[{"re":0,"im":0},{"re":0,"im":0},{"re":0,"im":0}],"lambda":{"re":1,"im":0}}'))
    pts = json.loads(out)
    assert code == 0 and [p["class"] for p in pts] == ["repulsive", "repulsive"]
    assert [p["theta"] for p in pts] == pytest.approx([0, math.pi])
    code, out, _ = run(capsys, "fixed-points", "--map", map_file('{"kind":"extremal","c":{"re":0,"im":0},"a":0}'))
    assert code == 2


def test_lowner(capsys, map_file):
    code, out, _ = run(capsys, "lowner", "--map", map_file(Z_HALF), "--arc", f"0,{2 * math.pi}")
    rep = json.loads(out)
    assert code == 0 and rep["sigma"] == pytest.approx(4 * math.pi) and rep["holds_quantitative"]
    code, _, err = run(capsys, "lowner", "--map", map_file('{"kind":"blaschke","zeros":[{"re":0.5,"im":0}]}'),
                       "--arc", "0,1")
    assert code == 2 and "origin" in err


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--count", "30", "--max-degree", "4", "--seed", "5")
    res = json.loads(out)
    assert code == 0 and res["maps_tested"] == 30 and res["violations"] == []


@pytest.mark.parametrize("argv", [
    ["eval", "--map", "/nonexistent.json", "--z", "0,0"],
    ["eval", "--z", "0,0"],
    ["eval", "--map", "-", "--z", "zero"],
    ["fuzz", "--max-degree", "12"],
    ["frobnicate"],
])
def test_input_errors_exit_2(capsys, monkeypatch, argv):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"{}")))
    assert main(argv) == 2


def test_parse_error_exit_2(capsys, map_file):
    code, _, err = run(capsys, "bounds", "--map", map_file('{"kind": '))
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "bounds", "--map", map_file('{"kind":"blaschke","zeros":[{"re":1.2,"im":0}]}'))
    assert code == 2 and "zeros[0]" in err


def test_bounds_requires_fixed_one(capsys, map_file):
    path = map_file('{"kind":"blaschke","zeros":[{"re":0,"im":0}],"lambda":{"re":0,"im":1}}')
    assert main(["bounds", "--map", path]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "boundary_schwarz", "extremal", "--c", "0,0", "--a", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["kind"] == "extremal"
