import json
import subprocess
import sys

import pytest

from negehrhart.cli import main
from negehrhart.polytope import parse_spec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out else None


@pytest.fixture
def reeve_spec(tmp_path, capsys):
    def make(m):
        path = tmp_path / f"reeve{m}.json"
        assert main(["construct", "--family", "reeve", "--m", str(m), "--out", str(path)]) == 0
        capsys.readouterr()
        return str(path)

    return make


def test_construct_reeve(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, doc = run_json(capsys, "construct", "--family", "reeve", "--m", "13", "--out", str(path))
    assert code == 0
    assert len(json.loads(path.read_text())["vertices"]) == 4
    assert doc["outputs"]["dimension"] == 3
    assert doc["inputs"]["m"] == 13 and len(doc["inputs"]["spec_sha256"]) == 64


def test_construct_paper(tmp_path, capsys):
    path = tmp_path / "p.json"
    code, doc = run_json(capsys, "construct", "--family", "paper", "--d", "5", "--m", "37", "--out", str(path))
    assert code == 0
    assert doc["outputs"]["dimension"] == 5
    assert parse_spec(path.read_text()).ambient_dim == 5
    assert json.loads(path.read_text())["kind"] == "product"


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--family", "paper", "--d", "3", "--m", "1"],
        ["construct", "--family", "reeve", "--m", "0"],
        ["construct", "--family", "paper", "--m", "5"],
        ["signs", "--d", "2", "--m", "5"],
        ["find-min-m", "--d", "3"],
        ["gcheck", "--d-max", "4"],
        ["roots"],
        ["roots", "--poly", "[[0, 1]]"],
        ["ehrhart", "/nonexistent/spec.json"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "cube"])
    assert exc.value.code == 2


def test_bad_spec_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "box", "intervals": [[0, 1], [2, 1]]}')
    code, _, err = run(capsys, "ehrhart", str(path))
    assert code == 2 and "empty interval" in err


def test_ehrhart_reeve13(capsys, reeve_spec):
    path = reeve_spec(13)
    code, out, _ = run(capsys, "ehrhart", path)
    assert code == 0
    assert "13/6*n^3 + n^2 - 1/6*n + 1" in out
    code, doc = run_json(capsys, "ehrhart", path)
    assert doc["outputs"]["ehrhart"]["text"] == "13/6*n^3 + n^2 - 1/6*n + 1"
    assert doc["outputs"]["delta_vector"] == [1, 0, 12, 0]
    assert doc["outputs"]["positive_real_roots"] == 0


def test_ehrhart_unit_square(tmp_path, capsys):
    path = tmp_path / "sq.json"
    path.write_text('{"kind": "box", "intervals": [[0, 1], [0, 1]]}')
    code, doc = run_json(capsys, "ehrhart", str(path))
    assert code == 0 and doc["outputs"]["ehrhart"]["text"] == "n^2 + 2*n + 1"


def test_ehrhart_reeve35_roots(capsys, reeve_spec):
    code, doc = run_json(capsys, "ehrhart", reeve_spec(35))
    assert code == 0
    assert doc["outputs"]["positive_real_roots"] == 2
    assert doc["outputs"]["isolating_intervals"] == [[[0, 1], [29, 70]], [[29, 70], [29, 35]]]
    assert "approx_float" not in doc["outputs"]


def test_ehrhart_inconsistent_exits_1(tmp_path, capsys):
    path = tmp_path / "half.json"
    path.write_text(json.dumps({
        "kind": "hrep", "dim": 1,
        "inequalities": [{"normal": [2], "rhs": 1}, {"normal": [-1], "rhs": 0}],
        "bbox": [[0, 1]],
    }))
    code, _, err = run(capsys, "ehrhart", str(path))
    assert code == 1 and "not Ehrhart-consistent" in err


def test_budget_refusal_exits_3(capsys, reeve_spec):
    path = reeve_spec(13)
    assert run(capsys, "ehrhart", path, "--max-points", "100")[0] == 3
    assert run(capsys, "verify", "--d", "5", "--m", "37", "--max-points", "1000")[0] == 3
    assert run(capsys, "ehrhart", path, "--max-points", "100", "--no-limit")[0] == 0


@pytest.mark.parametrize("d, m", [(4, 19), (4, 1), (5, 37)])
def test_verify_passes(capsys, d, m):
    code, doc = run_json(capsys, "verify", "--d", str(d), "--m", str(m))
    assert code == 0
    assert doc["verdicts"] == {"brute_force_equals_closed_form": "pass"}
    assert doc["outputs"]["counted"] == doc["outputs"]["closed_form"]
    assert doc["inputs"]["d"] == d and doc["inputs"]["m"] == m


def test_verify_reports_failure(capsys, monkeypatch):
    from negehrhart import cli
    from negehrhart.exact import Polynomial

    monkeypatch.setattr(cli, "closed_form_ehrhart", lambda d, m: Polynomial([1]))
    code, doc = run_json(capsys, "verify", "--d", "4", "--m", "19")
    assert code == 1 and doc["verdicts"]["brute_force_equals_closed_form"] == "fail"


def test_signs_rows(capsys):
    code, out, _ = run(capsys, "signs", "--d", "4", "--m", "19")
    assert code == 0
    for row in ["n^1: -1/6 NEG", "n^2: -1/6 NEG", "n^3: 25/6 POS", "n^4: 19/6 POS"]:
        assert row in out


def test_find_min_m(capsys):
    code, out, _ = run(capsys, "find-min-m", "--d", "6")
    assert code == 0 and out.splitlines()[0] == "67"
    code, doc = run_json(capsys, "find-min-m", "--d", "6")
    assert doc["outputs"]["min_m"] == 67
    assert doc["outputs"]["witness"]["all_middle_negative"] is True
    assert doc["outputs"]["counter_witness"]["all_middle_negative"] is False


def test_gcheck(capsys):
    code, doc = run_json(capsys, "gcheck", "--d-max", "60")
    assert code == 0 and doc["verdicts"]["g_positive"] == "pass"
    assert doc["outputs"]["pairs_checked"] == sum(d - 4 for d in range(5, 61))


def test_gcheck_failure_exits_1(capsys, monkeypatch):
    from negehrhart import cli

    monkeypatch.setattr(cli, "g_value", lambda d, j: 0)
    assert run(capsys, "gcheck", "--d-max", "6")[0] == 1


def test_closed_form(capsys):
    code, doc = run_json(capsys, "closed-form", "--d", "4", "--m", "19")
    assert code == 0
    assert doc["outputs"]["ehrhart"]["text"] == "19/6*n^4 + 25/6*n^3 - 1/6*n^2 - 1/6*n + 1"


def test_roots(capsys):
    code, doc = run_json(capsys, "roots", "--m", "35", "--approx")
    assert code == 0 and doc["outputs"]["positive_real_roots"] == 2
    assert doc["outputs"]["approx_float"] == pytest.approx([0.4, 3 / 7], abs=1e-9)
    code, doc = run_json(capsys, "roots", "--scan")
    assert doc["outputs"]["min_positive_root_m"] == 35
    code, doc = run_json(capsys, "roots", "--poly", "[[-6,1],[11,1],[-6,1],[1,1]]")
    assert doc["outputs"]["positive_real_roots"] == 3


def test_json_is_deterministic_and_thread_independent(capsys, reeve_spec):
    path = reeve_spec(13)
    outputs = set()
    for threads in ("1", "1", "4"):
        code, out, _ = run(capsys, "ehrhart", path, "--json", "--threads", threads)
        outputs.add(out)
    assert len(outputs) == 1
    a = run(capsys, "verify", "--d", "4", "--m", "19", "--json")[1]
    b = run(capsys, "verify", "--d", "4", "--m", "19", "--json", "--threads", "3")[1]
    assert a == b


def test_report_out(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["signs", "--d", "5", "--m", "37", "--json", "--report-out", str(out)]) == 0
    assert json.loads(out.read_text())["outputs"]["all_middle_negative"] is True


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "negehrhart", "find-min-m", "--d", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("19")
