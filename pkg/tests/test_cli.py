import json
import subprocess
import sys

import pytest

from qqrcodes import __version__
from qqrcodes.cli import main
from test_families import QQR_DISTRIBUTIONS


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def report(tmp_path, capsys, *argv):
    path = tmp_path / "r.json"
    code, out = run(capsys, *argv, "--json", str(path), "--threads", "1")
    return code, out, json.loads(path.read_text())


@pytest.mark.parametrize("p", sorted(QQR_DISTRIBUTIONS))
def test_qqr_spectrum(capsys, p):
    code, out = run(capsys, "qqr", "--p", str(p), "--spectrum", "--threads", "1")
    assert code == 0
    assert str(QQR_DISTRIBUTIONS[p]) in out


def test_qqr_spectrum_csv(capsys):
    code, out = run(capsys, "qqr", "--p", "7", "--spectrum", "--csv", "--threads", "1")
    assert "weight,count" in out and "\n4,14\n" in out


def test_qqr_codeword(capsys):
    code, out = run(capsys, "qqr", "--p", "11", "--codeword", "1,2,3,4")
    assert "(1, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 0, 1, 1)" in out
    assert "weight 16" in out


def test_report_schema(tmp_path, capsys):
    code, out, data = report(tmp_path, capsys, "qqr", "--p", "13", "--extended", "--zeta",
                             "--tol", "1e-6", "--seed", "5")
    assert code == 0
    for key in ("command", "argv", "p", "seed", "version", "started", "finished", "results"):
        assert key in data
    assert data["command"] == "qqr" and data["p"] == 13 and data["seed"] == 5
    assert data["version"] == __version__
    ext = data["results"]["extended"]
    assert (ext["n"], ext["k"], ext["d"]) == (26, 13, 6)
    z = data["results"]["extended_zeta"]
    assert z["degree"] == 16 and z["P"][0] == "3/17710"
    assert z["rh_holds"] is False


def test_zeta_from_distribution(capsys):
    dist = str(QQR_DISTRIBUTIONS[7])
    code, out = run(capsys, "zeta", "--distribution", dist, "--k", "7")
    assert code == 0 and "2/143" in out and "8 of 8" in out


def test_zeta_needs_k():
    with pytest.raises(SystemExit):
        main(["zeta", "--distribution", "[1, 0, 1]"])


def test_curve(tmp_path, capsys):
    code, out, data = report(tmp_path, capsys, "curve", "--p", "11", "--subset", "1,2,3,4",
                             "--moebius", "1", "--voloch")
    c = data["results"]["curve"]
    assert (c["char_sum"], c["total"]) == (-5, 8)
    assert data["results"]["moebius"]["reduced"] == [1, 4, 6]
    assert data["results"]["voloch"] == {"total": 16, "a": "-1/2"}


def test_curve_ell(capsys):
    code, out = run(capsys, "curve", "--p", "37", "--ell", "3")
    assert code == 0 and "condition True" in out


def test_search_seed_recorded(tmp_path, capsys):
    _, _, a = report(tmp_path, capsys, "search", "--p", "31", "--strategy", "random",
                     "--budget", "500", "--seed", "9")
    _, _, b = report(tmp_path, capsys, "search", "--p", "31", "--strategy", "random",
                     "--budget", "500", "--seed", "9")
    assert a["results"]["search"] == b["results"]["search"]
    assert a["results"]["search"]["seed"] == 9


def test_bounds(tmp_path, capsys):
    code, out, data = report(tmp_path, capsys, "bounds", "--constants")
    assert data["results"]["constants"]["mrrw_delta(1/2)"] == pytest.approx(0.18708, abs=1e-5)
    code, out, data = report(tmp_path, capsys, "bounds", "--p", "11", "--b", "1.4")
    assert data["results"]["b_statement"]["holds"] is False
    assert data["results"]["b_statement"]["witness"] == [0, 1, 3]
    code, out = run(capsys, "bounds", "--volume", "7", "1")
    assert "V(7,1) = 8" in out


@pytest.mark.parametrize("p", [7, 11, 13])
def test_verify(tmp_path, capsys, p):
    code, out, data = report(tmp_path, capsys, "verify", "--p", str(p))
    assert code == 0
    table = data["results"]["table"]
    assert all(r["ok"] is not False for r in table if r["kind"] == "check")
    assert {r["kind"] for r in table} <= {"check", "claim", "report"}


def test_lqr(capsys):
    code, out = run(capsys, "lqr", "--p", "7", "--closure", "--threads", "1")
    assert "|C| = 128" in out and "[28,8," in out


@pytest.mark.parametrize("argv", [["qqr", "--p", "9"], ["qqr", "--p", "2"], ["lqr", "--p", "5"],
                                  ["verify", "--p", "3"], ["curve", "--p", "abc"]])
def test_bad_primes_are_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_library_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["curve", "--p", "13", "--voloch"])
    assert exc.value.code == 2
    assert "mod 8" in capsys.readouterr().err


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "qqrcodes.cli", "--version"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == __version__
