import math

import numpy as np
import pytest

import entx


def test_full_transfer_point():
    cfg = entx.SystemConfig(theta=math.pi / 4, g_aA=1.0, g_bB=1.0)
    n, u = entx.xstate_observables(entx.unitary_elements(cfg, math.pi / 2))
    assert n == pytest.approx(1.0, abs=1e-12)
    assert u == pytest.approx(0.0, abs=1e-12)


def test_hamiltonian_is_hermitian():
    h = entx.build_hamiltonian(entx.SystemConfig(theta=0.3, g_aA=2.0, g_bB=0.5))
    assert h.shape == (16, 16)
    assert np.allclose(h, h.conj().T)


def test_negativity_matches_numpy_partial_transpose():
    x = entx.XStateAB(0.5, 0.25, 0.25, 0.25)
    rho = x.to_matrix()
    pt = rho.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)
    expected = 2 * -np.linalg.eigvalsh(pt).clip(max=0).sum()
    assert entx.negativity(rho) == pytest.approx(expected, abs=1e-12)
    assert entx.negativity(rho) == pytest.approx(0.20710678118654754, abs=1e-12)


def test_exact_evolution_matches_closed_form():
    cfg = entx.SystemConfig(theta=0.7, g_aA=2.0, g_bB=1.0)
    psi = entx.evolve_exact(cfg, 1.3)
    rho_ab = entx.partial_trace_to_ab(np.outer(psi, psi.conj()))
    assert np.allclose(rho_ab, entx.unitary_elements(cfg, 1.3).to_matrix(), atol=1e-10)


def test_time_series_columns():
    cfg = entx.SystemConfig(theta=math.pi / 4, g_aA=1.0, g_bB=1.0, kappa_A=0.1, kappa_B=0.1)
    cols = entx.time_series(cfg, 20.0, samples=51, engine="rk4")
    closed = entx.time_series(cfg, 20.0, samples=51)
    assert set(cols) == {"t", "N", "U", "residual"}
    assert len(cols["t"]) == 51
    assert np.allclose(cols["N"], closed["N"], atol=1e-6)
    assert (cols["residual"] >= -1e-8).all()


def test_errors_are_translated():
    with pytest.raises(entx.EntxError):
        entx.frontier_negativity(0.5)
    with pytest.raises(entx.EntxError):
        entx.SystemConfig(g_aA=-1.0)
    cfg = entx.SystemConfig(theta=math.pi / 4, kappa_A=0.1)
    with pytest.raises(entx.EntxError):
        entx.time_series(cfg, 1.0, samples=11, engine="exact")
