import json
import math
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("DRIFTWAVE_CLI", "driftwave")
DATA = Path(os.environ.get("DRIFTWAVE_TEST_DATA", Path(__file__).parents[1] / "data"))


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=full_env)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


def write_json(tmp_path, name, obj):
    return write(tmp_path, name, json.dumps(obj))


def csv_rows(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_help_exits_zero():
    assert run("--help").returncode == 0
    assert run("bench", "--help").returncode == 0


def test_estimate_constant_with_zero_threshold(tmp_path):
    series = write(tmp_path, "c.txt", "2.75\n" * 8)
    res = run("estimate", series, "--lambda", "0")
    assert res.returncode == 0, res.stderr
    out = json.loads(res.stdout)
    assert list(out) == ["value", "lambda_used", "sigma_used", "n_used"]
    assert out["value"] == 2.75
    assert out["n_used"] == 8


def test_estimate_single_value_is_an_input_error(tmp_path):
    series = write(tmp_path, "one.txt", "1.0\n")
    assert run("estimate", series).returncode == 2


def test_input_and_config_errors(tmp_path):
    series = write(tmp_path, "c.txt", "1\n2\n3\n4\n")
    assert run("estimate", tmp_path / "missing.txt").returncode == 2
    assert run("estimate", write(tmp_path, "bad.txt", "1\nx\n")).returncode == 2
    assert run("estimate", series, "--family", "db11").returncode == 3
    assert run("estimate", series, "--delta", "2").returncode == 3
    assert run("estimate", series, "--sigma", "abc").returncode == 3
    assert run("estimate", series, "--no-such-flag").returncode == 3
    bench = write_json(tmp_path, "bench.json", {"trials": 1})
    assert run("bench", bench).returncode == 3  # no --seed
    typo = write_json(tmp_path, "typo.json", {"trails": 1})
    assert run("bench", typo, "--seed", "1").returncode == 3
    broken = write(tmp_path, "broken.json", "{")
    assert run("bench", broken, "--seed", "1").returncode == 3


def test_estimate_matches_frozen_golden():
    res = run("estimate", DATA / "doppler_noisy.csv", "--family", "db8", "--sigma", "0.1155")
    assert res.returncode == 0, res.stderr
    assert res.stdout == (DATA / "doppler_db8_estimate.json").read_text()


def test_denoise_csv_uses_original_time_index(tmp_path):
    series = write(tmp_path, "s.txt", "".join(f"{v}\n" for v in [9, 1, 2, 3, 4]))
    res = run("denoise", series, "--lambda", "0")
    assert res.returncode == 0, res.stderr
    rows = csv_rows(res.stdout)
    assert [r["t"] for r in rows] == ["2", "3", "4", "5"]
    assert [float(r["value"]) for r in rows] == pytest.approx([1, 2, 3, 4], abs=1e-12)


def test_bench_zero_noise_passthrough(tmp_path):
    spec = write_json(
        tmp_path,
        "b.json",
        {"signal": {"n_points": 64}, "noise": {"levels": [0]}, "methods": ["passthrough"], "trials": 1},
    )
    res = run("bench", spec, "--seed", "3")
    assert res.returncode == 0, res.stderr
    assert res.stdout.splitlines()[0] == "method,noise_level,mean_mse,std_mse"
    assert all(float(r["mean_mse"]) == 0.0 for r in csv_rows(res.stdout))


def test_bench_is_byte_identical(tmp_path):
    spec = write_json(tmp_path, "b.json", {"signal": {"n_points": 128}, "noise": {"levels": [0.2, 1.0]}, "trials": 4})
    outputs = []
    for threads in (1, 4, 1):
        out = tmp_path / f"out_{threads}_{len(outputs)}.csv"
        res = run("bench", spec, "--seed", "11", "--threads", threads, "--out", out)
        assert res.returncode == 0, res.stderr
        assert res.stdout == ""
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_bench_json_format(tmp_path):
    spec = write_json(tmp_path, "b.json", {"signal": {"n_points": 32}, "noise": {"levels": [0.2]}, "trials": 2})
    res = run("bench", spec, "--seed", "1", "--format", "json")
    assert res.returncode == 0, res.stderr
    out = json.loads(res.stdout)
    assert out["trials"] == 2


def test_select_two_constant_models():
    res = run("select", DATA / "two_constant_models.csv")
    assert res.returncode == 0, res.stderr
    out = json.loads(res.stdout)
    assert out["chosen"] == "A"
    assert list(out) == ["chosen", "scores", "config"]
    assert list(out["scores"]) == ["A", "B"]


def test_select_ragged_panel_is_an_input_error(tmp_path):
    panel = write(tmp_path, "p.csv", "t,A,B\n1,0.5,0.6\n2,0.5\n")
    assert run("select", panel).returncode == 2


def test_tvscale_noiseless_passthrough_has_zero_risk(tmp_path):
    spec = write_json(tmp_path, "tv.json", {"sigma": 0, "estimator": "passthrough", "n_grid": [16, 32], "trials": 2})
    res = run("tvscale", spec, "--seed", "5")
    assert res.returncode == 0, res.stderr
    rows = csv_rows(res.stdout)
    assert len(rows) == 2
    for row in rows:
        assert float(row["mean_R_sq"]) == 0.0
        assert float(row["mean_R_abs"]) == 0.0


def default_lambda(sigma, delta, n):
    return 2 * sigma * math.sqrt(2 * math.log(math.log(n) / delta))


def test_bounds_constant_signal_closed_form(tmp_path):
    c, sigma, delta, n = 0.4, 0.2, 0.1, 40
    spec = write_json(
        tmp_path,
        "bounds.json",
        {
            "signal": {"kind": "constant", "level": c, "n_points": n},
            "noise": {"distribution": "gaussian", "levels": [sigma]},
            "families": ["haar"],
            "profile": "orthonormal",
        },
    )
    res = run("bounds", spec)
    assert res.returncode == 0, res.stderr
    terms = []
    for t in range(2, n + 1):
        m = 2 ** int(math.log2(t))
        terms.append(6 / math.sqrt(m) * min(math.sqrt(m) * c, default_lambda(sigma, delta, m)))
    (row,) = csv_rows(res.stdout)
    assert row["family"] == "haar"
    assert float(row["mean_bound"]) == pytest.approx(sum(terms) / len(terms), rel=1e-12)


def test_bounds_random_signal_needs_a_seed(tmp_path):
    spec = write_json(tmp_path, "bounds.json", {"signal": {"kind": "tv", "n_points": 32}})
    assert run("bounds", spec).returncode == 3
    assert run("bounds", spec, "--seed", "2").returncode == 0


def test_bounds_theta_report(tmp_path):
    n, sigma, delta = 64, 0.5, 0.1
    theta = write(tmp_path, "theta.txt", "1.5\n" * n)
    res = run("bounds", "--theta", theta, "--sigma", sigma)
    assert res.returncode == 0, res.stderr
    out = json.loads(res.stdout)
    kappa = max(4 * math.sqrt(2 * math.log(math.log(n) / delta)), 2 * math.sqrt(2)) * (math.log2(n) + 1)
    assert out["r_star"] == n
    assert out["kappa"] == pytest.approx(kappa, rel=1e-14)
    assert out["haar_variational"] == pytest.approx(kappa * sigma / math.sqrt(n), rel=1e-14)
    assert run("bounds", "--theta", write(tmp_path, "odd.txt", "1\n" * 12), "--sigma", "1").returncode == 2


def test_log_level_does_not_change_output(tmp_path):
    series = write(tmp_path, "s.txt", "".join(f"{math.sin(i)}\n" for i in range(32)))
    quiet = run("estimate", series)
    loud = run("estimate", series, env={"DRIFTWAVE_LOG": "debug"})
    assert quiet.returncode == loud.returncode == 0
    assert quiet.stdout == loud.stdout
