import io
import json
import subprocess
import sys

import pytest

from triality_lab import checks
from triality_lab.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def planted(monkeypatch):
    def ok():
        return checks.CheckReport("t.ok", checks.PASS, {"value": 1})

    def bad():
        return checks._report("t.bad", {"holds": False}, {})

    def boom():
        raise RuntimeError("planted crash")

    registry = [("t.ok", ok), ("t.bad", bad), ("t.boom", boom)]
    monkeypatch.setattr(checks, "REGISTRY", registry)
    return registry


def test_exit_codes(planted):
    assert run(["run", "t.ok"])[0] == 0
    assert run(["run", "t.bad"])[0] == 1
    assert run(["run", "nosuch.*"])[0] == 2
    assert run(["run", "t.boom"])[0] == 3
    assert run(["run", "t.*"])[0] == 3


def test_fail_carries_counterexample(planted):
    code, text = run(["run", "t.bad", "--format", "json"])
    (rep,) = json.loads(text)
    assert code == 1
    assert rep["status"] == "fail" and rep["counterexample"] == {"failed": ["holds"]}


def test_list(planted):
    assert run(["run", "--list"]) == (0, "t.ok\nt.bad\nt.boom\n")


def test_lie_checks_pass():
    code, text = run(["run", "lie.*", "--format", "json"])
    reps = json.loads(text)
    assert code == 0
    assert [r["id"] for r in reps] == ["lie.compact", "lie.split"]
    assert all(r["status"] == "pass" for r in reps)


def test_generator_images_json():
    code, text = run(["charclass", "theorem1", "--format", "json"])
    assert code == 0
    assert json.loads(text) == {
        "phi(p1)": "p1",
        "phi(p2)": "3/8*p1^2-1/2*p2-3*e",
        "phi(p3)": "1/16*p1^3-1/4*p1*p2-1/2*p1*e+p3",
        "phi(e)": "-1/16*p1^2+1/4*p2-1/2*e",
    }


def test_roots_orbits_text():
    code, text = run(["roots", "orbits"])
    assert code == 0
    assert text.splitlines() == [
        "fixed: ABCY ABC2Y Y",
        "orbit: A -> C -> B",
        "orbit: AY -> CY -> BY",
        "orbit: ABY -> ACY -> BCY",
    ]


def test_sing_commands():
    code, text = run(["sing", "quotient-form", "--format", "json"])
    assert code == 0
    assert json.loads(text)["cartan"] == [["2", "-3"], ["-1", "2"]]
    code, text = run(["sing", "milnor", "--n", "5", "--format", "json"])
    assert json.loads(text) == {"n": 5, "milnor": 16, "genus": 2, "punctures": 1}
    code, text = run(["sing", "cubic", "--a", "1", "--d", "0", "--format", "json"])
    assert json.loads(text)["discriminant"] == "0"
    code, text = run(["sing", "morsify", "--a", "1", "--format", "json"])
    assert [p["label"] for p in json.loads(text)] == ["Y", "A", "B", "C"]


def test_octonion_table():
    code, text = run(["octonion", "table", "--format", "json"])
    table = json.loads(text)
    assert code == 0 and table[1][2] == "e6" and table[0][0] == "e0"


def test_charclass_fixed_f3():
    code, text = run(["charclass", "fixed", "--degree", "8", "--field", "F3", "--format", "json"])
    data = json.loads(text)
    assert code == 0
    assert data["euler_span_has_invariant_complement"] is True


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "triality_lab", "run", "roots.*"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS     roots.weight-map" in proc.stdout
