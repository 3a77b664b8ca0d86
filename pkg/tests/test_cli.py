import csv
import io
import math
import subprocess
import sys

import pytest

from lzdyson.cli import main


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def parse(text):
    lines = text.splitlines()
    assert lines[0].startswith("# lz-dyson ")
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    return lines[0], rows[0], [[float(v) for v in r] for r in rows[1:]]


def test_evolve_decoupled(capsys):
    code, out, _ = run(["evolve", "--gamma", "0", "--tau-max", "10"], capsys)
    assert code == 0
    comment, header, rows = parse(out)
    assert header == ["tau", "re_a", "im_a", "re_b", "im_b", "norm"]
    assert comment == "# lz-dyson evolve gamma=0.0 tau-max=10.0 step=0.002 method=expmid picture=lab"
    for r in rows:
        assert abs(r[5] - 1) < 1e-12
        assert abs(math.hypot(r[1], r[2]) - 1) < 1e-12


def test_evolve_final_population(capsys, tmp_path):
    out_file = tmp_path / "traj.csv"
    code, out, _ = run(["evolve", "--gamma", "0.5", "--tau-max", "60", "--output", str(out_file)], capsys)
    assert code == 0 and out == ""
    text = out_file.read_text()
    assert "\r" not in text
    _, _, rows = parse(text)
    last = rows[-1]
    assert abs(last[1] ** 2 + last[2] ** 2 - 0.20788) < 2e-2
    # at least 12 significant digits
    assert len(text.splitlines()[2].split(",")[1].split("e")[0].replace("-", "").replace(".", "")) >= 12


def test_evolve_invalid_gamma_writes_nothing(capsys, tmp_path):
    out_file = tmp_path / "bad.csv"
    code, out, err = run(["evolve", "--gamma", "-1", "--tau-max", "5", "--output", str(out_file)], capsys)
    assert code == 2
    assert not out_file.exists()
    assert "usage" in err and "gamma" in err


def test_bad_flag_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["evolve", "--no-such-flag"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_bad_method(capsys):
    code, _, err = run(["evolve", "--method", "euler"], capsys)
    assert code == 2


def test_sweep_defaults(capsys):
    code, out, _ = run(["sweep"], capsys)
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["gamma", "p_numeric", "p_analytic", "abs_error"]
    assert [r[0] for r in rows] == [0.1, 0.5, 1.0, 2.0]
    assert max(r[3] for r in rows) < 1e-2


def test_sweep_single_zero(capsys):
    code, out, _ = run(["sweep", "--gamma", "0"], capsys)
    assert code == 0
    assert parse(out)[2] == [[0.0, 1.0, 1.0, 0.0]]


def test_sweep_sorted_and_range(capsys):
    code, out, _ = run(["sweep", "--gamma", "1,0.2", "--tau-max", "20"], capsys)
    assert [r[0] for r in parse(out)[2]] == [0.2, 1.0]
    code, out, _ = run(["sweep", "--gamma-min", "0", "--gamma-max", "1", "--gamma-count", "3",
                        "--tau-max", "20"], capsys)
    assert code == 0
    assert [r[0] for r in parse(out)[2]] == [0.0, 0.5, 1.0]


def test_sweep_empty_range(capsys):
    code, _, err = run(["sweep", "--gamma-min", "2", "--gamma-max", "1"], capsys)
    assert code == 2
    assert "empty" in err


def test_dyson(capsys):
    code, out, _ = run(["dyson", "--order", "1"], capsys)
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["n", "re_numeric", "im_numeric", "analytic", "abs_error"]
    assert rows[0][0] == 1 and rows[0][4] < 0.016
    code, out, _ = run(["dyson", "--order", "2"], capsys)
    assert parse(out)[2][0][4] < 0.04


def test_dyson_unsupported_order(capsys):
    code, _, _ = run(["dyson", "--order", "5"], capsys)
    assert code == 2


def test_series(capsys):
    code, out, _ = run(["series", "--gamma", "0.5", "--order", "25"], capsys)
    assert code == 0
    _, header, rows = parse(out)
    assert header == ["k", "partial_sum", "limit", "abs_error"]
    assert len(rows) == 26
    assert rows[-1][3] < 1e-12
    assert rows[0][1] == 1.0


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# series settings\ngamma = 2\norder=30\n")
    code, out, _ = run(["series", "--config", str(cfg)], capsys)
    assert code == 0
    comment, _, rows = parse(out)
    assert comment == "# lz-dyson series gamma=2.0 order=30"
    assert len(rows) == 31
    code, out, _ = run(["series", "--config", str(cfg), "--order", "5"], capsys)
    assert len(parse(out)[2]) == 6


def test_config_file_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense=1\n")
    assert run(["series", "--config", str(cfg)], capsys)[0] == 2
    cfg.write_text("gamma=abc\n")
    assert run(["series", "--config", str(cfg)], capsys)[0] == 2
    assert run(["series", "--config", str(tmp_path / "missing.cfg")], capsys)[0] == 2


def test_verify_only_analytic(capsys):
    code, out, _ = run(["verify", "--only", "analytic"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert all(l.startswith("PASS analytic.") for l in lines[:-1])


def test_verify_coarse_step_fails(capsys):
    code, out, _ = run(["verify", "--only", "propagator", "--step", "0.5"], capsys)
    assert code == 1
    assert "FAIL propagator.unitarity" in out


def test_verify_unknown_group(capsys):
    assert run(["verify", "--only", "nope"], capsys)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lzdyson", "series", "--gamma", "0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("# lz-dyson series")


def test_verify_all_defaults(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == 0, out
    assert "FAIL" not in out
