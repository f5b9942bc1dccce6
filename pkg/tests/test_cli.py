import json
import subprocess
import sys

import pytest

from ttknots.cli import main
from ttknots.ttk import export_catalog


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_braid(capsys):
    code, out, _ = run(capsys, "braid", "3", "2", "1", "-1")
    assert code == 0 and out.strip() == "3: 1 2 1 2"


@pytest.mark.parametrize("argv, fragment", [
    (("braid", "4", "2", "2", "-1"), "gcd(p,q) = 1"),
    (("braid", "5", "3", "7", "-1"), "r > p"),
    (("invariants", "3", "3", "1", "-1"), "p > q"),
])
def test_invalid_parameters_exit_2(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and fragment in err


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "3", "2", "1", "-1", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["alexander"] == "t^-1 - 1 + t" and rec["jones"] == "t + t^3 - t^4"
    assert rec["determinant"] == 3 and (rec["p"], rec["r"]) == (3, 1)


def test_invariants_text_without_jones(capsys):
    code, out, _ = run(capsys, "invariants", "5", "2", "3", "-1", "--no-jones")
    assert code == 0 and "alexander: 1" in out and "determinant: 1" in out


def test_invariants_ceiling(capsys):
    code, out, _ = run(capsys, "invariants", "7", "3", "2", "-1", "--json", "--jones-ceiling", "3")
    rec = json.loads(out)
    assert code == 0 and rec["jones"] is None and rec["jones_skipped"]


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "T1", "--m-max", "2", "--n-max", "2")
    assert code == 0
    assert out.count("match") >= 4 and "# T1" in out


def test_verify_all_skips_side_conditions(capsys):
    code, out, _ = run(capsys, "verify", "T4", "--m-max", "1", "--n-max", "1")
    assert code == 0 and out.startswith("skipped: T4(m=1,n=1)")


def test_verify_json_lines(capsys):
    code, out, _ = run(capsys, "verify", "T6", "--m-max", "1", "--n-max", "2", "--format", "json-lines")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(lines) == 2 and all(x["family"] == "T6" for x in lines)
    assert all(x["status"] == "match" for x in lines)


def test_verify_unknown_family(capsys):
    code, _, err = run(capsys, "verify", "T9")
    assert code == 2 and "unknown family" in err
    code, _, err = run(capsys, "verify")
    assert code == 2


def test_verify_corrupted_catalog_exits_1(capsys, tmp_path):
    records = export_catalog()
    records[0]["a"] = records[0]["a"] + "+1"
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(records))
    code, out, _ = run(capsys, "verify", "T1", "--m-max", "2", "--n-max", "2", "--catalog", str(path))
    assert code == 1 and "mismatch" in out


@pytest.mark.parametrize("content", ["{not json", '[{"id": "T1"}]',
                                     json.dumps([{**export_catalog()[0], "p": "m*/n"}]),
                                     json.dumps([{**export_catalog()[0], "p": "open(m)"}])])
def test_verify_malformed_catalog_exits_2(capsys, tmp_path, content):
    path = tmp_path / "catalog.json"
    path.write_text(content)
    code, _, err = run(capsys, "verify", "T1", "--catalog", str(path))
    assert code == 2 and err.startswith("error:")


def test_survey_rejects_small_p(capsys):
    code, _, err = run(capsys, "survey", "--p-max", "2")
    assert code == 2 and "--p-max" in err


def test_survey_csv(capsys, tmp_path):
    path = tmp_path / "rows.csv"
    code, out, _ = run(capsys, "survey", "--p-max", "4", "-o", str(path))
    lines = path.read_text().splitlines()
    assert code == 0
    assert lines[0] == "p,q,r,s,verdict,a,b,epsilon,evidence,family,status"
    assert len(lines) == 1 + 1 + 2 * 2 + 2 * 3      # p = 2, 3, 4
    assert out.startswith("# survey p <= 4: 11 rows")


def test_survey_stdout_keeps_summary_on_stderr(capsys):
    code, out, err = run(capsys, "survey", "--p-max", "3", "--format", "json-lines")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(rows) == 5 and err.startswith("# survey")


def test_catalog_round_trips_through_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog")
    path = tmp_path / "catalog.json"
    path.write_text(out)
    assert json.loads(out) == export_catalog()
    code, _, _ = run(capsys, "verify", "T3", "--m-max", "2", "--n-max", "2", "--catalog", str(path))
    assert code == 0


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_moves_identity_script(capsys, tmp_path):
    b = write(tmp_path, "b.txt", "3: 1 2 1 2\n")
    s = write(tmp_path, "s.txt", "# nothing to do\n")
    code, out, _ = run(capsys, "moves", b, s)
    assert code == 0 and out.strip() == "3: 1 2 1 2"


def test_moves_check(capsys, tmp_path):
    b = write(tmp_path, "b.txt", "3: 1 2 1 2\n")
    s = write(tmp_path, "s.txt", "conjugate 2\nstabilize -1\nbraid_relation 1\n")
    code, out, _ = run(capsys, "moves", b, s, "--check")
    assert code == 0 and "invariants preserved: yes" in out


def test_moves_bad_conjugation_reports_index(capsys, tmp_path):
    b = write(tmp_path, "b.txt", "3: 1 2 1 2\n")
    s = write(tmp_path, "s.txt", "conjugate 1\nconjugate 3\n")
    code, _, err = run(capsys, "moves", b, s)
    assert code == 2 and "move 1" in err


def test_moves_parse_error(capsys, tmp_path):
    b = write(tmp_path, "b.txt", "3: 1 9\n")
    s = write(tmp_path, "s.txt", "")
    code, _, err = run(capsys, "moves", b, s)
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ttknots", "braid", "5", "2", "3", "-1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "5: 1 2 3 4 1 2 3 4 -2 -1 -2 -1 -2 -1"
