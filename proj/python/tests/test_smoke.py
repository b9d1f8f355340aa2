import json
import math

import numpy as np
import pytest

import foguel

PHI = (1 + math.sqrt(5)) / 2


def test_formulas():
    assert foguel.foguel_norm_formula(1.0) == pytest.approx(PHI, abs=1e-15)
    assert foguel.power_norm_bound(1.0, 2) == pytest.approx(1 + math.sqrt(2), abs=1e-15)
    lo, hi = foguel.inverse_spectral_map(1.5)
    assert (lo, hi) == (0.5, 2.0)
    assert foguel.spectral_map(PHI) == pytest.approx(1.0, abs=1e-12)
    assert foguel.GOLDEN_RATIO == pytest.approx(PHI)


def test_singular_values_match_numpy():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(6, 4)) + 1j * rng.normal(size=(6, 4))
    ours = foguel.singular_values(a)
    ref = np.linalg.svd(a, compute_uv=False)
    np.testing.assert_allclose(ours, ref, atol=1e-12)
    u, s, v = foguel.svd(a)
    np.testing.assert_allclose(u[:, :4] @ np.diag(s) @ v.conj().T[:4, :], a, atol=1e-12)


def test_takagi_round_trip():
    rng = np.random.default_rng(1)
    b = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    a = (b + b.T) / 2
    u, s = foguel.takagi(a)
    np.testing.assert_allclose(u @ np.diag(s) @ u.T, a, atol=1e-10)
    for lam, v in foguel.antilinear_eigenpairs(a):
        assert np.linalg.norm(a @ v - lam * v.conj()) <= 1e-9 * max(1.0, s[0])


def test_rejects_asymmetric_takagi():
    with pytest.raises(ValueError):
        foguel.takagi(np.array([[0, 1], [0, 0]], dtype=complex))


def test_foguel_assembly_and_norm():
    r = foguel.assemble_foguel("identity", 1, 32)
    assert r.shape == (64, 64)
    np.testing.assert_array_equal(r @ np.eye(64)[:, 0], np.zeros(64))
    assert foguel.operator_norm(r) <= PHI + 1e-9
    halmos = foguel.assemble_foguel_power("halmos", 2, 81)
    assert foguel.operator_norm(halmos) == pytest.approx(PHI, abs=0.05)
    t2 = foguel.power_symbol("identity", 2, 4)
    assert np.linalg.norm(t2, 2) == pytest.approx(PHI, abs=1e-12)
    assert foguel.halmos_index_set(30) == [1, 3, 9, 27]


def test_mapping_and_counterexample():
    v = foguel.verify_spectral_mapping(json.dumps({"kind": "diagonal", "values": [2, 0.5, 0]}), 1, 64)
    assert v["passed"]
    assert len(v["predicted"]) == 6
    shift = foguel.counterexample_check_shift(16)
    assert shift["eigenpair_residual"] <= 1e-12
    assert not shift["stronger_form"]["passed"]
    gap = foguel.gap_check_identity(64)
    assert gap["norm"] <= PHI + 1e-9


def test_run_scenario(tmp_path):
    cfg = {"scenario": "norm", "symbol": {"kind": "zero"}, "N": [8, 16], "output": str(tmp_path / "z")}
    rows, files = foguel.run_scenario(json.dumps(cfg))
    assert [r["N"] for r in rows] == [8, 16]
    assert all(r["pass"] for r in rows)
    assert rows[0]["computed_norm"] == pytest.approx(1.0)
    assert (tmp_path / "z.csv").exists()
    with pytest.raises(ValueError):
        foguel.run_scenario('{"scenario": "bogus"}')
