"""Smoke tests for the python module: mesh construction, manifest runs,
rate arithmetic and the invariant suite."""

import math

import pytest

import tmflow


def test_mesh_counts():
    mesh = tmflow.build_structured_mesh([0.0, 0.0], [1.0, 1.0], [10, 10])
    assert mesh.dim == 2
    assert mesh.n_vertices == 121
    assert mesh.n_cells == 200
    assert mesh.h == pytest.approx(math.sqrt(2.0) / 10)

    cube = tmflow.build_structured_mesh([0, 0, 0], [1, 1, 1], [2, 2, 2])
    assert cube.n_vertices == 27
    assert cube.n_cells == 48


def test_convergence_rate():
    assert tmflow.convergence_rate(4.0, 1.0, 0.1, 0.05) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        tmflow.convergence_rate(-1.0, 1.0, 0.1, 0.05)


def test_manifest_validation():
    info = tmflow.parse_manifest("[problem]\npreset = cavity2d\n")
    assert info["scheme"] == "rpc1"
    assert info["elements"] == "p2-p1"
    with pytest.raises(RuntimeError):
        tmflow.parse_manifest("[run]\nnot_a_key = 1\n[problem]\npreset = cavity2d\n")


def test_small_manufactured_run(tmp_path):
    manifest = """
[run]
scheme = rpc1
dim = 2
elements = p1b-p1
tend = 0.02
tau = 0.01
n = 5
[problem]
manufactured = ms2d
[output]
vtk = off
profiles = off
"""
    out = tmflow.solve_manifest(manifest, str(tmp_path))
    assert out["steps"] == 2
    assert out["t"] == pytest.approx(0.02)
    assert out["div_residual_max"] < 1e-9
    for key in ("u", "p", "w", "T"):
        values = out[key]
        assert len(values) > 0
        assert all(math.isfinite(v) for v in values)
    assert abs(sum(out["p"])) < 1e-6  # recentred pressure
    assert "errors" in out["log"]


def test_tiny_convergence_table(tmp_path):
    manifest = """
[run]
scheme = rpc1
dim = 2
elements = p1b-p1
tend = 0.02
tau_law = h2
n = 4,8
[problem]
manufactured = ms2d
[output]
vtk = off
profiles = off
"""
    table = tmflow.convergence_study(manifest, str(tmp_path))
    assert len(table["rows"]) == 2
    assert len(table["rates"]) == 1
    assert table["rates"][0]["TL2"] > 1.5
    assert (tmp_path / "table.csv").exists()


def test_self_check():
    results = tmflow.self_check()
    assert results
    for item in results:
        assert item["pass"], f"{item['name']}: {item['detail']}"
