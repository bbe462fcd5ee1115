"""Smoke tests for the python bindings and the CLI entry point."""

import json
import math
import os
import subprocess

import pytest

import tomolab


def test_state_construction_and_exact_values():
    vac = tomolab.vacuum(1)
    assert vac.modes == 1
    assert tomolab.is_physical(vac)
    assert tomolab.analytic_q(vac, [0j]) == pytest.approx(1.0 / math.pi)

    sq = tomolab.squeeze(vac, 0, 0.7)
    n = tomolab.analytic_moment(sq, [1], [1], 1.0)
    assert n.real == pytest.approx(math.sinh(0.7) ** 2)
    assert n.imag == pytest.approx(0.0, abs=1e-14)


def test_kernels():
    assert tomolab.s_kernel(0.0, 1) == pytest.approx(1.0 / math.pi**2)
    assert tomolab.pattern_function([0], [0], 0.0, []) == pytest.approx(1.0 / math.pi)
    with pytest.raises(ValueError):
        tomolab.s_kernel(0.0, 1, s=-0.2, eta=0.8)


def test_simulate_and_reconstruct_round_trip(tmp_path):
    grid = tomolab.build_grid(1, 1, 8, tomolab.WeightKind.quasidistribution)
    data = tomolab.simulate_dataset(tomolab.vacuum(1), grid, 500, 1.0, 5)
    assert data.record_count == 8 * 500

    path = str(tmp_path / "d.csv")
    tomolab.write_dataset(data, path)
    back = tomolab.read_dataset(path)
    assert back.record_count == data.record_count
    assert back.eta == data.eta

    rho = tomolab.estimate_rho(back, 1)
    r00 = rho[((0,), (0,))]
    assert abs(r00.value.real - 1.0) < 5.0 * r00.std_error

    (q0,) = tomolab.estimate_quasidist(back, -1.0, [[0j]])
    assert abs(q0.value.real - 1.0 / math.pi) < 5.0 * q0.std_error

    with pytest.raises(IOError):
        tomolab.read_dataset(str(tmp_path / "missing.csv"))


def _cli():
    path = os.environ.get("TOMOLAB_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("TOMOLAB_CLI not set")
    return path


def test_cli_exit_codes(tmp_path):
    cli = _cli()
    out = tmp_path / "run"
    res = subprocess.run(
        [cli, "simulate", "--state", "vacuum", "--modes", "1", "--theta-count", "1",
         "--psi-count", "8", "--per-point", "50", "--seed", "3",
         "--out", str(out)],
        capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    dataset = out / "dataset.csv"
    assert dataset.exists()
    header = json.loads(dataset.read_text().splitlines()[0][1:])
    assert header["records"] == 8 * 50

    res = subprocess.run(
        [cli, "reconstruct", "--data", str(dataset), "--task", "q", "--s", "0.5",
         "--out", str(out)],
        capture_output=True, text=True)
    assert res.returncode == 2  # ordering bound violated

    res = subprocess.run(
        [cli, "reconstruct", "--data", str(tmp_path / "nope.csv"), "--task", "q",
         "--out", str(out)],
        capture_output=True, text=True)
    assert res.returncode == 3  # unreadable dataset
