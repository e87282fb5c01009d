"""Check resolution, exit codes, and deterministic rendering."""
import json

from limitwave.report import CheckResult, Report, report_to_json, report_to_text


def test_tolerance_rule():
    assert CheckResult("a", 0.5, tol=1.0).resolved()
    assert not CheckResult("a", 2.0, tol=1.0).resolved()
    # boundary counts as a pass
    assert CheckResult("a", 1.0, tol=1.0).resolved()


def test_explicit_pass_overrides_tolerance():
    assert CheckResult("a", 2.0, tol=1.0, passed=True).resolved()
    assert not CheckResult("a", 0.0, tol=1.0, passed=False).resolved()


def test_informational_checks_always_pass():
    assert CheckResult("a", 123.0).resolved()


def test_report_exit_code():
    rep = Report(tool="t")
    assert rep.ok and rep.exit_code() == 0
    rep.add("good", 0.0, tol=1e-12)
    assert rep.exit_code() == 0
    rep.add("bad", 1.0, tol=1e-12)
    assert not rep.ok and rep.exit_code() == 1


def test_json_is_deterministic():
    def build():
        rep = Report(tool="t", inputs={"preset": "haar", "K": 3})
        rep.add("res", 1e-15, tol=1e-12, detail="note")
        rep.data["value"] = 0.5 + 0.25j
        return rep

    a, b = report_to_json(build()), report_to_json(build())
    assert a == b
    doc = json.loads(a)
    assert doc["ok"] is True
    assert doc["checks"][0]["passed"] is True
    assert doc["data"]["value"] == {"im": 0.25, "re": 0.5}


def test_json_flattens_numpy_scalars():
    import numpy as np

    rep = Report(tool="t")
    rep.data["x"] = np.float64(0.25)
    rep.data["seq"] = [np.complex128(1j)]
    doc = json.loads(report_to_json(rep))
    assert doc["data"]["x"] == 0.25
    assert doc["data"]["seq"] == [{"im": 1.0, "re": 0.0}]


def test_text_rendering():
    rep = Report(tool="demo", inputs={"N": 2})
    rep.add("ok-check", 0.0, tol=1e-12)
    rep.add("bad-check", 3.0, tol=1e-12, detail="why")
    text = report_to_text(rep)
    assert text.startswith("# demo")
    assert "PASS ok-check" in text
    assert "FAIL bad-check" in text and "why" in text


def test_text_with_no_checks():
    assert "informational" in report_to_text(Report(tool="demo"))
