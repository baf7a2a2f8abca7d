import json
import subprocess
import sys
from importlib import resources

import pytest

from trienum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_gstar_json(capsys):
    code, out, _ = run(capsys, "compute", "--family", "Gstar", "--order", "9", "--format", "json")
    assert code == 0
    row = json.loads(out)
    assert [int(c) for c in row["coefficients"]] == [0, 0, 1, 3, 19, 128, 909, 6737, 51683, 407802]


def test_compute_order_zero(capsys):
    code, _, err = run(capsys, "compute", "--family", "F", "--order", "0")
    assert code == 2
    assert "order must be ≥ 1" in err


def test_compute_K_csv(capsys):
    code, out, _ = run(capsys, "compute", "--family", "K", "--order", "17", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family,order,index,coefficients"
    assert lines[-1].endswith(",14115,54306")


def test_compute_bivariate(capsys):
    code, out, _ = run(capsys, "compute", "-f", "S", "-n", "4")
    assert code == 0
    rows = json.loads(out)["coefficients"]
    assert len(rows) == 5
    assert rows[1] == ["1"]


def test_compute_several_families_keep_order(capsys):
    code, out, _ = run(capsys, "compute", "-f", "K,F", "-f", "G", "-n", "12")
    assert code == 0
    assert [json.loads(l)["family"] for l in out.splitlines()] == ["K", "F", "G"]


def test_threads_are_deterministic(capsys, monkeypatch):
    args = ("compute", "-f", "F,G,H,K", "-n", "20")
    _, serial, _ = run(capsys, *args, "--threads", "1")
    monkeypatch.setenv("TRIENUM_THREADS", "3")
    _, parallel, _ = run(capsys, *args)
    assert serial == parallel


def test_unknown_family(capsys):
    code, _, _ = run(capsys, "compute", "-f", "Q")
    assert code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# census\nfamily = F\norder = 3\nformat = csv\n")
    code, out, _ = run(capsys, "compute", "--config", str(cfg))
    assert code == 0
    assert out.splitlines()[-1] == "F,3,t,0,1,4,24"
    # flags win over the file
    code, out, _ = run(capsys, "compute", "--config", str(cfg), "--order", "2")
    assert out.splitlines()[-1] == "F,2,t,0,1,4"


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "compute", "--config", str(cfg))
    assert code == 2
    assert "colour" in err


def test_digits_range(capsys):
    assert run(capsys, "asymptotics", "-f", "F", "--digits", "3")[0] == 2


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    assert code == 0
    assert all(json.loads(l)["status"] == "pass" for l in out.splitlines())


def test_verify_K_40(capsys):
    code, out, _ = run(capsys, "verify", "--family", "K", "--order", "40")
    assert code == 0
    checks = {json.loads(l)["check"] for l in out.splitlines()}
    assert any("algebraic residual" in c for c in checks)


def test_verify_T_eliminate(capsys):
    code, _, _ = run(capsys, "verify", "--family", "T", "--eliminate")
    assert code == 0


@pytest.fixture()
def corrupted_data(tmp_path):
    src = resources.files("trienum") / "data"
    for f in src.iterdir():
        if f.name.endswith(".txt"):
            (tmp_path / f.name).write_text(f.read_text())
    path = tmp_path / "eq_K.txt"
    path.write_text(path.read_text().replace("\n2 1 8\n", "\n2 1 9\n"))
    return tmp_path


def test_verify_fault_injection(corrupted_data, capsys):
    code, out, _ = run(capsys, "verify", "-f", "K", "-n", "40", "--data-dir", str(corrupted_data))
    assert code == 1
    failed = [json.loads(l) for l in out.splitlines() if json.loads(l)["status"] == "fail"]
    assert len(failed) == 1
    assert failed[0]["first_failing_order"] == 21
    assert "P_2" in failed[0]["detail"]


def test_missing_data_dir(tmp_path, capsys):
    assert run(capsys, "verify", "--data-dir", str(tmp_path / "nope"))[0] == 2


def test_eliminate(capsys):
    code, out, _ = run(capsys, "eliminate", "-f", "G")
    assert code == 0
    row = json.loads(out)
    assert row["family"] == "T"


def test_asymptotics_rows(capsys):
    code, out, _ = run(capsys, "asymptotics", "-f", "F,H,K")
    assert code == 0
    rows = {r["family"]: r for r in map(json.loads, out.splitlines())}
    assert rows["F"]["inv_rho"] == "13.500000"
    assert rows["K"]["inv_rho"].startswith("4.06")
    assert abs(float(rows["H"]["exponent"]) + 2.5) < 0.1
    assert rows["H"]["rho_reference_match"] is True


def test_asymptotics_rejects_star_families(capsys):
    assert run(capsys, "asymptotics", "-f", "Gstar")[0] == 2


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "trienum", "compute", "-f", "F", "-n", "3", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "t^3: 24" in proc.stdout
