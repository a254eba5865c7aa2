import csv
import json
import subprocess
import sys

import pytest

from polarroad.cli import JobError, main, parse_job
from polarroad.errors import ParseError

SPHERE = """\
vars: x1 x2 x3
poly s = x1^2 + x2^2 + x3^2 - 1
map: auto center=(3, 1, 2) seed=7
i = 2
u = 30
samples = 800
command = roadmap, verify
"""


def _run(tmp_path, text, *extra):
    job = tmp_path / "job.txt"
    job.write_text(text)
    out = tmp_path / "out"
    code = main(["--job", str(job), "--out", str(out), *extra])
    return code, out


def _strip(path):
    d = json.loads(path.read_text())
    d.pop("metadata")
    return d


def test_parse_job_defaults():
    job = parse_job(SPHERE)
    assert job.dimension == 2 and job.i == 2
    assert job.commands == ["roadmap", "verify"]
    assert job.map_spec["kind"] == "auto" and job.map_spec["seed"] == 7
    assert parse_job(SPHERE, seed_override=5).seed == 5


@pytest.mark.parametrize(
    "text",
    [
        "poly g = x1\nmap: x1\n",
        "vars: x1\nmap: x1\n",
        "vars: x1 x2\npoly g = x1\nmap: x1\ncommand = fly\n",
        "vars: x1 x2 x3\npoly g = x1\nmap: x1\ni = 7\n",
        "vars: x1 x2\npoly g = x1\nmap: auto center=(1)\n",
        "vars: x1 x2\npoly g = x1\nwhat is this\n",
    ],
)
def test_bad_jobs(text):
    with pytest.raises(JobError):
        parse_job(text)


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as info:
        parse_job("vars: x1 x2\n\npoly g = x1 +* x2\nmap: x1\n")
    assert info.value.line == 3


def test_roadmap_and_verify_succeed(tmp_path):
    code, out = _run(tmp_path, SPHERE)
    assert code == 0
    rep = json.loads((out / "report.json").read_text())
    assert rep["format"] == 1
    assert rep["results"]["roadmap"]["certificate"] == "assumptions-hold"
    assert rep["results"]["verify"]["verdict"] == "pass"
    bundle = json.loads((out / "bundle.json").read_text())
    assert bundle["job_hash"] == rep["job_hash"]
    assert bundle["K_i"]["real_count"] == 2


def test_reports_are_reproducible(tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    a, out_a = _run(tmp_path / "a", SPHERE)
    b, out_b = _run(tmp_path / "b", SPHERE)
    assert a == b == 0
    assert _strip(out_a / "report.json") == _strip(out_b / "report.json")
    assert (out_a / "bundle.json").read_bytes() == (out_b / "bundle.json").read_bytes()


def test_seed_override_changes_hash(tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    _, out_a = _run(tmp_path / "a", SPHERE)
    _, out_b = _run(tmp_path / "b", SPHERE, "--seed", "3")
    ra, rb = _strip(out_a / "report.json"), _strip(out_b / "report.json")
    assert ra["job_hash"] != rb["job_hash"]
    assert rb["seed"] == 3


def test_violated_assumption_exit_code(tmp_path):
    text = "vars: x1 x2 x3\npoly g = x1*x2\nmap: (x1-1)^2 + x2^2 + x3^2; x2; x1\ni = 2\ncommand = check\n"
    code, out = _run(tmp_path, text)
    assert code == 2
    assert json.loads((out / "report.json").read_text())["results"]["check"]["A"]["status"] == "violated"


def test_input_error_exit_code(tmp_path, capsys):
    code, _ = _run(tmp_path, "vars: x1 x2\npoly g = x1^\nmap: x1\n")
    assert code == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "parse" and err["line"] == 2
    assert main(["--job", str(tmp_path / "missing.job")]) == 1


def test_resource_limit_exit_code(tmp_path, capsys):
    text = "vars: x1 x2 x3\npoly a = x1^2*x2 - x3\npoly b = x1*x2^2 - 1\npoly c = x1*x3 - x2\nmap: x1\ncommand = solve0d\n"
    code, _ = _run(tmp_path, text, "--budget-pairs", "1")
    assert code == 3
    assert json.loads(capsys.readouterr().err)["error"] == "resource-limit"
    # the process-wide budget is restored afterwards
    code, _ = _run(tmp_path, text)
    assert code == 0


def test_csv_output(tmp_path):
    text = "vars: x y\npoly a = x^2 + y^2 - 4\npoly b = x*y - 1\nmap: x\ncommand = solve0d\n"
    code, out = _run(tmp_path, text, "--format", "csv")
    assert code == 0
    rows = list(csv.reader((out / "points.csv").open()))
    assert rows[0] == ["component", "x", "y", "residual"]
    assert len(rows) == 5
    for r in rows[1:]:
        x, y = float(r[1]), float(r[2])
        assert abs(x * y - 1) < 1e-5 and float(r[3]) < 1e-5
    assert json.loads((out / "report.json").read_text())["results"]["solve0d"]["real_count"] == 4
    code, out = _run(tmp_path, text, "--format", "csv", "--tolerance", "1/1099511627776")
    rows = list(csv.reader((out / "points.csv").open()))
    assert max(float(r[3]) for r in rows[1:]) < 1e-10


def test_slice_and_bounded_commands(tmp_path):
    text = "vars: x y\npoly c = x^2 + y^2 - 1\nmap: x\nlevels = -1/2, 0, 1/2\nu = 2\nradius = 3\ncommand = slice, bounded\n"
    code, out = _run(tmp_path, text, "--format", "csv")
    assert code == 0
    res = json.loads((out / "report.json").read_text())["results"]
    assert res["slice"]["points_per_level"] == [2, 2, 2]
    assert res["slice"]["branches"] == 2
    assert res["bounded"]["verdict"] == "pass"
    assert (out / "roadmap.csv").exists()


def test_module_entry_point(tmp_path):
    job = tmp_path / "j.txt"
    job.write_text("vars: x\npoly p = x^2 - 2\nmap: x\ncommand = solve0d\n")
    r = subprocess.run([sys.executable, "-m", "polarroad", "--job", str(job), "--out", str(tmp_path / "o")],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
