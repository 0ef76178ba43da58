import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("NOTCHWALL_CLI")


def run_cli(*args, cwd):
    assert CLI, "NOTCHWALL_CLI not set"
    return subprocess.run([CLI, *args], cwd=cwd, capture_output=True, text=True, timeout=300)


@pytest.mark.skipif(CLI is None, reason="CLI path not provided")
def test_cli_solve_and_verify(tmp_path):
    r = run_cli(
        "solve", "--profile", "plateau:0.5,1,0.25", "--L", "12", "--n", "1201",
        "--out", "wall.csv", "--report", "report.json", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["converged"]
    assert rep["energy"]["total"] < 2.0
    assert "seed" in rep
    assert (tmp_path / "wall.csv").exists()

    v = run_cli("verify", "--profile", "plateau:0.5,1,0.25", "--L", "12", "--n", "1201",
                "--monotone", "--defect", "--odd", cwd=tmp_path)
    assert v.returncode == 0, v.stdout + v.stderr


@pytest.mark.skipif(CLI is None, reason="CLI path not provided")
def test_cli_bad_profile_fails(tmp_path):
    r = run_cli("solve", "--profile", "plateau:1.5,1,0", cwd=tmp_path)
    assert r.returncode != 0


def test_module_solve_matches_separatrix():
    nw = pytest.importorskip("notchwall")
    grid = nw.Grid(12.0, 1201)
    flat = nw.Profile.plateau(1.0, 1.0, 0.0)
    out = nw.solve(flat, grid)
    assert out["converged"]
    assert abs(out["energy"]["total"] - 2.0) < 1e-3
    x = grid.nodes()
    zero = min(range(len(x)), key=lambda i: abs(out["theta"][i]))
    shift = x[zero]
    sup = max(abs(t - nw.separatrix(xx - shift)) for t, xx in zip(out["theta"], x))
    assert sup < 2e-3


def test_module_transforms_decrease_energy():
    nw = pytest.importorskip("notchwall")
    grid = nw.Grid(10.0, 401)
    prof = nw.Profile.plateau(0.5, 1.0, 0.25)
    theta = [nw.separatrix(xx - 1.0) + 0.3 * math.exp(-(xx - 2.0) ** 2) for xx in grid.nodes()]
    theta = [max(-math.pi / 2, min(math.pi / 2, t)) for t in theta]
    theta[0], theta[-1] = -math.pi / 2, math.pi / 2
    steps = nw.transform_chain(theta, ["threshold", "reflect", "envelope", "localize"], prof, grid)
    energies = [nw.energy(theta, prof, grid)["total"]] + [s["energy_after"] for s in steps]
    assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))


def test_module_relax_dissipates():
    nw = pytest.importorskip("notchwall")
    grid = nw.Grid(12.0, 241)
    prof = nw.Profile.plateau(0.5, 1.0, 0.25)
    wall = nw.solve(prof, grid)
    m0 = nw.unlift(wall["theta"], 0.0)
    m0 = [[a, b, c + 0.1 * math.exp(-xx * xx)] for (a, b, c), xx in zip(m0, grid.nodes())]
    norm = [math.sqrt(a * a + b * b + c * c) for a, b, c in m0]
    m0 = [[a / r, b / r, c / r] for (a, b, c), r in zip(m0, norm)]
    tr = nw.relax(m0, prof, grid, t_end=5.0, theta_ref=wall["theta"])
    es = tr["energies"]
    assert all(b <= a + 1e-10 for a, b in zip(es, es[1:]))
    assert tr["distances"][-1] < tr["distances"][0]
