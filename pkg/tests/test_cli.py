import io
import json

from foliationlab import cli


def run_cli(argv):
    buf = io.StringIO()
    import sys

    old = sys.stdout
    sys.stdout = buf
    try:
        code = cli.main(argv)
    finally:
        sys.stdout = old
    return code, buf.getvalue()


def test_classify_json_schema():
    code, out = run_cli(["classify", "v = x d/dx - y d/dy"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "foliation-lab/1"
    assert doc["result"]["multiplicity"] == 1
    assert doc["result"]["reduced"] is True
    assert doc["result"]["dicritical"] is False


def test_deterministic_output():
    argv = ["classify", "v = y d/dx + x^2 d/dy"]
    _, out1 = run_cli(argv)
    _, out2 = run_cli(argv)
    assert out1 == out2


def test_exit_codes():
    code, _ = run_cli(["weakly-reduced", "v = x d/dx - y d/dy"])
    assert code == 0
    code, _ = run_cli(["weakly-reduced", "v = x d/dx + y d/dy"])
    assert code == 2
    code, _ = run_cli(["classify", "v = exp(x) d/dx"])
    assert code == 1
    code, _ = run_cli(["classify", "v = x d/dx + "])
    assert code == 1


def test_resolve_depth_exceeded_exit_zero():
    code, out = run_cli(["resolve", "v = y d/dx + x^2 d/dy", "--depth", "1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["status"] == "depth_exceeded"


def test_blowup_report():
    code, out = run_cli(["blowup", "v = x d/dx + y d/dy"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["c1"]["saturation_exponent"] == 1
    assert doc["result"]["c1"]["exceptional_invariant"] is False


def test_separatrix_commands():
    code, out = run_cli(["separatrix", "v = x d/dx + (-y + x^2) d/dy",
                         "--eigenvalue", "1", "--order", "4"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["components"][1][2] == "1/3"
    code, out = run_cli(["separatrix", "v = x d/dx + (2*y + x^2) d/dy",
                         "--eigenvalue", "1", "--order", "4"])
    assert code == 0
    assert json.loads(out)["result"]["resonance_order"] == 2
    code, out = run_cli(["separatrix", "v = x d/dx - y d/dy",
                         "--check", "corner", "--divisor", "{x, y}", "--order", "6"])
    assert code == 0
    assert json.loads(out)["result"]["outcome"] == "confirmed"


def test_effectivity_command():
    code, out = run_cli(["effectivity", "--dim", "2", "--power", "4", "--alpha", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["outcome"] == "section_exists"
    assert doc["result"]["surplus"] == 11


def test_nevanlinna_csv_and_series():
    code, out = run_cli(["nevanlinna", "f(t) = (t, t^2) zeros: ideal at 0 order 1",
                         "--check", "fmt", "--ideal", "x, y",
                         "--radii", "2:8:3", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("r,T,N,m")
    assert len(lines) == 4
    code, out = run_cli(["nevanlinna", "f(t) = (t, t^2) zeros: ideal at 0 order 1",
                         "--check", "fmt", "--ideal", "x, y",
                         "--radii", "2:8:3", "--series", "diff"])
    assert code == 0
    assert out.splitlines()[0] == "r,diff"


def test_nevanlinna_taut_not_applicable():
    code, out = run_cli(["nevanlinna", "f(t) = (t)", "--check", "taut", "--radii", "4:8:2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["applicable"] is False
