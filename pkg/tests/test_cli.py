import json
import subprocess
import sys

import numpy as np
import pytest

from acausal_qed.cli import run
from acausal_qed.units import GAUSSIAN


def invoke(argv, capsys):
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def parse_kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def read_csv(path):
    with open(path, newline="") as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    return header, rows


def test_constants(capsys):
    code, out, _ = invoke(["constants"], capsys)
    assert code == 0
    kv = parse_kv(out)
    assert float(kv["c"]) == GAUSSIAN.c
    assert kv["r_vac_unit"] == "ps/cm"
    assert float(kv["alpha"]) == pytest.approx(0.0072973525693, rel=1e-9)
    code, out, _ = invoke(["constants", "--system", "si"], capsys)
    assert code == 0
    assert float(parse_kv(out)["r_vac"]) == pytest.approx(376.73031346177, rel=1e-12)


def test_propagator(capsys):
    code, out, _ = invoke(["propagator", "--r", "2", "--ct", "1"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r_cm,ct_cm,sigma_cm,offcone_im,oncone_re"
    assert float(lines[1].split(",")[3]) == pytest.approx(1 / (3 * np.pi), rel=1e-15)


def test_propagator_on_cone_fails(capsys):
    code, _, err = invoke(["propagator", "--r", "1", "--ct", "1"], capsys)
    assert code == 1
    assert "LightConeSingular" in err


def test_decompose_round_trip(tmp_path, capsys):
    t = np.arange(64) * 0.1
    sig = np.cos(2 * np.pi * 4 * t / 6.4)
    src = tmp_path / "sig.csv"
    src.write_text("t,re,im\n" + "".join(f"{float(a)!r},{float(b)!r},0\n" for a, b in zip(t, sig)))
    out = tmp_path / "parts.csv"
    code, _, _ = invoke(["decompose", "--in", str(src), "--out", str(out)], capsys)
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["t", "re_plus", "im_plus", "re_minus", "im_minus"]
    vals = np.array(rows, dtype=float)
    assert np.allclose(vals[:, 1] + vals[:, 3], sig, atol=1e-12)
    assert np.allclose(vals[:, 2] + vals[:, 4], 0, atol=1e-12)


def test_decompose_bad_input(tmp_path, capsys):
    src = tmp_path / "bad.csv"
    src.write_text("t,re,im\n0,1,0\n1,1,0\n3,1,0\n")
    assert invoke(["decompose", "--in", str(src)], capsys)[0] == 2
    assert invoke(["decompose", "--in", str(tmp_path / "missing.csv")], capsys)[0] == 2


def overlap_config(**extra):
    doc = {
        "grid": {"n": 8, "spacing_cm": 1.0},
        "initial": {"type": "gaussian", "center_cm": [-1, 0, 0], "width_cm": 1.0, "polarization": [0, 0, 1]},
        "final": {"type": "gaussian", "center_cm": [1, 0, 0], "width_cm": 1.0, "polarization": [0, 0, 1]},
    }
    doc.update(extra)
    return doc


def test_overlap_csv_deterministic(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(overlap_config()))
    outs = []
    for k in range(2):
        out = tmp_path / f"o{k}.csv"
        assert invoke(["overlap", "--config", str(cfg), "--out", str(out)], capsys)[0] == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert b"\r" not in outs[0]
    header, rows = read_csv(tmp_path / "o0.csv")
    assert header == ["route", "re", "im", "probability"]
    assert [r[0] for r in rows] == ["momentum", "position"]
    assert all(0 < float(r[3]) < 1 for r in rows)


def test_overlap_rejects_unknown_key(tmp_path, capsys):
    doc = overlap_config()
    doc["grid"]["spacing"] = 1.0
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(doc))
    code, _, err = invoke(["overlap", "--config", str(cfg)], capsys)
    assert code == 2
    assert "spacing" in err
    cfg.write_text(json.dumps(overlap_config(colour="blue")))
    assert invoke(["overlap", "--config", str(cfg)], capsys)[0] == 2
    cfg.write_text("{not json")
    assert invoke(["overlap", "--config", str(cfg)], capsys)[0] == 2


def test_tline_beta(capsys):
    code, out, _ = invoke(["tline", "beta", "--n", "1", "--r-ohms", "50"], capsys)
    assert code == 0
    assert out.startswith("beta=0.00387")


def test_tline_sweep_threads_byte_identical(tmp_path, capsys):
    base = ["tline", "sweep", "--n", "1", "--r-ohms", "50", "--a", "1", "--b-min", "10", "--b-max", "1000",
            "--points", "5"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert invoke(base + ["--out", str(a)], capsys)[0] == 0
    assert invoke(base + ["--threads", "3", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    header, rows = read_csv(a)
    assert header == ["b", "log_p", "p", "beta_running"]
    assert len(rows) == 5
    assert float(rows[-1][3]) == pytest.approx(0.0038740458673, rel=1e-3)


def test_tline_sweep_bad_range(capsys):
    code, _, err = invoke(["tline", "sweep", "--n", "1", "--r-ohms", "50", "--a", "1", "--b-min", "100",
                           "--b-max", "10"], capsys)
    assert code == 2
    assert "BadSweep" in err


def test_tline_classical(tmp_path, capsys):
    z = np.linspace(-10, 10, 201)
    v = np.where(np.abs(z) < 1, 1 - np.abs(z), 0.0)
    src = tmp_path / "v.csv"
    src.write_text("z,v\n" + "".join(f"{float(a)!r},{float(b)!r}\n" for a, b in zip(z, v)))
    out = tmp_path / "out.csv"
    t = 5.0 / GAUSSIAN.c
    assert invoke(["tline", "classical", "--profile", str(src), "--t", repr(t), "--out", str(out)], capsys)[0] == 0
    _, rows = read_csv(out)
    vals = np.array(rows, dtype=float)
    assert vals[:, 1][np.argmin(np.abs(z - 5))] == pytest.approx(0.5, abs=1e-9)
    assert np.all(vals[np.abs(z) > 6.0001, 1] == 0)
    assert invoke(["tline", "classical", "--profile", str(src), "--t", "1", "--eps", "0.1"], capsys)[0] == 1


def test_coincidence(capsys):
    code, out, _ = invoke(["coincidence", "--a12", "0.5,0", "--a21", "0.5,0"], capsys)
    assert code == 0
    kv = parse_kv(out)
    assert float(kv["P"]) == 1.0
    assert float(kv["C"]) == 1.0
    assert invoke(["coincidence"], capsys)[0] == 1  # all amplitudes zero
    assert invoke(["coincidence", "--a11", "nope"], capsys)[0] == 2


def test_fringes(tmp_path, capsys):
    out = tmp_path / "f.csv"
    code, _, _ = invoke(["coincidence", "fringes", "--baseline", "2", "--wavelength", "1e-6",
                         "--separation", "5e-7", "--points", "5", "--out", str(out)], capsys)
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["baseline_m", "phase_rad", "p_coincidence", "c11"]
    assert float(rows[2][2]) == pytest.approx(2.0)
    assert invoke(["coincidence", "fringes", "--baseline", "1", "--wavelength", "1", "--separation", "1",
                   "--points", "1"], capsys)[0] == 2


@pytest.mark.parametrize("argv", [["bogus"], [], ["tline"], ["tline", "beta"], ["propagator", "--r", "x", "--ct", "1"]])
def test_usage_errors(argv, capsys):
    assert invoke(argv, capsys)[0] == 2


@pytest.mark.parametrize("argv", [[], ["constants"], ["propagator"], ["decompose"], ["overlap"], ["tline"],
                                  ["tline", "beta"], ["tline", "sweep"], ["tline", "classical"], ["coincidence"],
                                  ["coincidence", "fringes"]])
def test_help_everywhere(argv, capsys):
    code, out, _ = invoke(argv + ["--help"], capsys)
    assert code == 0
    assert "usage:" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "acausal_qed", "tline", "beta", "--n", "2", "--r-ohms", "50"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert float(proc.stdout.split("=")[1]) == pytest.approx(4 * 0.0038740458673, rel=1e-10)
