import csv
import json
import math
import subprocess
import sys

import pytest

from oscbif.cli import main, parse_config, read_sequence_csv
from oscbif.exceptions import ConfigError


def run(tmp_path, name, *args):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, out


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_diagram_csv_and_svg(tmp_path):
    svg = tmp_path / "d.svg"
    code, out = run(tmp_path, "d.csv", "diagram", "--family", "sine_u", "--r", "1", "--n-max", "6", "--grid", "16",
                    "--svg", str(svg))
    assert code == 0
    data = rows(out)
    assert list(data[0]) == ["n", "nu", "lambda", "quad_error"]
    assert sorted({int(r["n"]) for r in data}) == [1, 2, 3, 4, 5, 6]
    mins = [min(float(r["lambda"]) for r in data if int(r["n"]) == n) for n in range(1, 7)]
    assert max(mins) / min(mins) < 4
    text = svg.read_text()
    assert text.startswith("<svg") and text.count("<polyline") == 6 and text.count("<circle") == 6


@pytest.mark.parametrize("family,r,direction", [("sine_u", "2", -1), ("inverse_sine_u", "3", 1)])
def test_diagram_minima_march(tmp_path, family, r, direction):
    code, out = run(tmp_path, "d.csv", "diagram", "--family", family, "--r", r, "--n-max", "5", "--grid", "16")
    assert code == 0
    data = rows(out)
    mins = [min(float(x["lambda"]) for x in data if int(x["n"]) == n) for n in range(1, 6)]
    steps = [direction * (b - a) for a, b in zip(mins, mins[1:])]
    assert all(s > 0 for s in steps)


def test_csv_uses_seventeen_digits(tmp_path):
    code, out = run(tmp_path, "p.csv", "profile", "--family", "constant", "--nu", "1", "--samples", "11")
    assert code == 0
    data = rows(out)
    assert list(data[0]) == ["x", "u"]
    assert float(data[3]["u"]) == pytest.approx(4 * 0.3 * 0.7, abs=1e-12)
    assert repr(float(data[3]["x"])) == "0.30000000000000004" or data[3]["x"] == "0.30000000000000004"


def test_lambda_seq_one_dimensional(tmp_path):
    code, out = run(tmp_path, "s.csv", "lambda-seq", "--family", "sine_u", "--r", "0", "--n-max", "5")
    assert code == 0
    data = rows(out)
    assert list(data[0]) == ["n", "lambda_n", "nu_at_min", "method"]
    assert {r["method"] for r in data} == {"TimeMap1D"}
    assert float(data[0]["lambda_n"]) == pytest.approx(46.3948, rel=1e-5)


def test_lambda_seq_radial(tmp_path):
    code, out = run(tmp_path, "s.csv", "lambda-seq", "--family", "sine_u", "--r", "0", "--N", "3", "--R", "1",
                    "--n-max", "4")
    assert code == 0
    data = rows(out)
    assert list(data[0]) == ["n", "nu_n", "lambda_bar_n", "method"]
    assert {r["method"] for r in data} == {"RadialUpperBound"}


def test_asymptotics_from_csv(tmp_path):
    code, seq = run(tmp_path, "s.csv", "lambda-seq", "--family", "sine_u", "--r", "2", "--n-max", "24")
    assert code == 0
    code, out = run(tmp_path, "a.json", "asymptotics", "--family", "sine_u", "--r", "2", "--input", str(seq))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["regime"] == "AllPositiveLambda" and doc["side"] == "FromInfinity"
    assert doc["slope"] == pytest.approx(-1.0, abs=0.2)
    assert doc["config"]["input"] == str(seq)


def test_malformed_sequence_csv(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("n,foo\n1,2\n")
    with pytest.raises(ConfigError):
        read_sequence_csv(str(bad))
    assert main(["asymptotics", "--input", str(bad)]) == 2


def test_verify_writes_report(tmp_path):
    code, out = run(tmp_path, "v.json", "verify", "--suite", "bachillerato")
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["failed"] == 0
    assert doc["summary"]["total"] == len(doc["cases"])
    assert doc["config"]["run"]["suite"] == "bachillerato"


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# example\nfamily = inverse_sine_u\nr = 2.0\nn_max = 7\nL = 3\n")
    c = parse_config(["lambda-seq", "--config", str(cfg), "--n-max", "4"])
    assert (c.family, c.r, c.n_max, c.L) == ("inverse_sine_u", 2.0, 4, 3.0)


@pytest.mark.parametrize("argv", [
    ["diagram", "--L", "1", "--N", "3", "--R", "1"],
    ["lambda-seq", "--N", "1", "--R", "1"],
    ["diagram", "--n-min", "5", "--n-max", "2"],
    ["profile"],
    ["verify"],
    ["diagram", "--L", "-1"],
    ["diagram", "--N", "3", "--R", "1"],
])
def test_config_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert "config error" in capsys.readouterr().err


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["diagram", "--config", str(cfg)]) == 2


def test_family_without_zeros_exits_one(tmp_path):
    code, _ = run(tmp_path, "d.csv", "diagram", "--family", "linear")
    assert code == 1


def test_unknown_command_rejected_by_argparse():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


@pytest.mark.parametrize("args", [
    ["diagram", "--family", "inverse_sine_u", "--r", "1", "--n-max", "3", "--grid", "12"],
    ["lambda-seq", "--family", "sine_u", "--r", "0.5", "--n-max", "6"],
    ["lambda-seq", "--family", "inverse_sine_u", "--r", "1", "--N", "2", "--R", "1.5", "--n-max", "6"],
    ["profile", "--family", "sine_u", "--r", "1", "--nu", "7.5"],
    ["verify", "--suite", "bachillerato"],
])
def test_byte_identical_reruns(tmp_path, args):
    # identical config, including the output paths, which the JSON reports echo
    out, svg = tmp_path / "run.out", tmp_path / "run.svg"
    extra = [] if args[0] == "verify" else ["--svg", str(svg)]
    snapshots = []
    for _ in range(2):
        assert main([*args, "--out", str(out), *extra]) == 0
        snapshots.append((out.read_bytes(), svg.read_bytes() if extra else b""))
    assert snapshots[0] == snapshots[1]


def test_console_entry_point(tmp_path):
    out = tmp_path / "p.csv"
    proc = subprocess.run([sys.executable, "-m", "oscbif.cli", "profile", "--family", "linear", "--nu", "2",
                           "--samples", "5", "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    u = [float(r["u"]) for r in rows(out)]
    assert u[2] == pytest.approx(2.0) and u[1] == pytest.approx(2 * math.sin(math.pi / 4), rel=1e-6)


def test_thread_count_does_not_change_output(tmp_path, monkeypatch):
    args = ["diagram", "--family", "sine_u", "--r", "0.5", "--n-max", "2", "--grid", "16", "--out", str(tmp_path / "d.csv")]
    outputs = []
    for threads in ("1", "3"):
        monkeypatch.setenv("OSCBIF_THREADS", threads)
        assert main(args) == 0
        outputs.append((tmp_path / "d.csv").read_bytes())
    assert outputs[0] == outputs[1]
