"""Time-domain propagation and the first-transfer estimator."""

import math

import numpy as np
import pytest

from cavity_rpm.core import LineSpectrum, ModelParams
from cavity_rpm.dynamics import default_time_grid, evolve, first_transfer_time
from cavity_rpm.effective import build_sector_hamiltonian, diagonalize, spectra_from_eigen
from cavity_rpm.harmonic import harmonic_amplitudes, harmonic_line_spectra


def spectra_for(params):
    return spectra_from_eigen(diagonalize(build_sector_hamiltonian(params)))


def test_default_time_grid_scales_with_fastest_rate():
    assert default_time_grid(ModelParams(n_photons=2)) == (50.0, 0.01)
    assert default_time_grid(ModelParams(n_photons=2, j_tun=2.0)) == (50.0, 0.005)
    assert default_time_grid(ModelParams(n_photons=2, g=-4.0, j_tun=2.0)) == (50.0, 0.0025)


def test_evolve_starts_from_the_edge_state():
    spec00, specn0 = spectra_for(ModelParams(n_photons=6, omega0=1.0, g=1.2, j_tun=0.8))
    ret, tra = evolve(spec00, specn0, 5.0, 0.01)
    assert ret.values[0] == pytest.approx(1.0, abs=1e-12)
    assert abs(tra.values[0]) < 1e-12
    assert len(ret) == 501
    assert ret.times[-1] == pytest.approx(5.0)


def test_evolve_matches_harmonic_closed_forms():
    params = ModelParams(n_photons=6, omega0=1.0, j_tun=0.8)
    spec00, spec10 = harmonic_line_spectra(params)
    ret, tra = evolve(spec00, spec10, 20.0, 0.01)
    ret_c, tra_c = harmonic_amplitudes(params, ret.times)
    np.testing.assert_allclose(ret.values, ret_c.values, atol=1e-10)
    np.testing.assert_allclose(tra.values, tra_c.values, atol=1e-10)


def test_evolve_matches_eigenbasis_propagation():
    """Propagating the dense eigensystem directly gives the same series."""
    params = ModelParams(n_photons=20, omega0=1.0, g=1.2, j_tun=0.8)
    h = build_sector_hamiltonian(params)
    decomp = diagonalize(h)
    spec00, specn0 = spectra_for(params)
    ret, tra = evolve(spec00, specn0, 10.0, 0.02)
    v = decomp.vectors
    phases = np.exp(-1j * np.outer(ret.times, decomp.energies))
    # |psi(t)> = V e^{-iEt} V^T e_0 ; read the first and last components
    coeffs = phases * v[0, :][None, :]
    ret_ref = coeffs @ v[0, :]
    tra_ref = coeffs @ v[-1, :]
    np.testing.assert_allclose(ret.values, ret_ref, atol=1e-10)
    np.testing.assert_allclose(tra.values, tra_ref, atol=1e-10)


def test_evolve_conserves_probability():
    spec00, specn0 = spectra_for(ModelParams(n_photons=10, omega0=1.0, g=1.2, j_tun=0.8))
    ret, tra = evolve(spec00, specn0, 30.0, 0.01)
    total = np.abs(ret.values) ** 2 + np.abs(tra.values) ** 2
    assert float(np.max(total)) <= 1.0 + 1e-9


def test_evolve_input_validation():
    spec00, specn0 = spectra_for(ModelParams(n_photons=4, omega0=1.0, g=0.9, j_tun=0.8))
    with pytest.raises(ValueError):
        evolve(spec00, specn0, 5.0, 0.0)
    with pytest.raises(ValueError):
        evolve(spec00, specn0, 0.005, 0.01)
    other = LineSpectrum(energies=[0.0], weights=[1.0], kind="offdiagonal")
    with pytest.raises(ValueError, match="line counts"):
        evolve(spec00, other, 5.0, 0.01)


def test_harmonic_return_is_periodic():
    params = ModelParams(n_photons=8, omega0=1.0, j_tun=0.8)
    period = math.pi / params.j_tun
    t = np.linspace(0.0, 2.0 * period, 801)
    ret, _ = harmonic_amplitudes(params, t)
    shifted, _ = harmonic_amplitudes(params, t + period)
    np.testing.assert_allclose(np.abs(shifted.values), np.abs(ret.values), atol=1e-12)


def test_first_transfer_finds_harmonic_peak():
    params = ModelParams(n_photons=6, omega0=1.0, j_tun=0.8)
    spec00, spec10 = harmonic_line_spectra(params)
    dt = 0.001
    ret, tra = evolve(spec00, spec10, 10.0, dt)
    t_hit = first_transfer_time(tra, 0.99)
    assert t_hit == pytest.approx(math.pi / (2.0 * params.j_tun), abs=2 * dt)


def test_first_transfer_prefers_earliest_peak():
    params = ModelParams(n_photons=100, omega0=1.0, g=1.2, j_tun=0.8)
    spec00, specn0 = spectra_for(params)
    ret, tra = evolve(spec00, specn0, 50.0, 0.005)
    t_hit = first_transfer_time(tra, 0.5)
    assert t_hit is not None
    # the anharmonic transfer peaks within the first few tunneling periods
    assert 0.0 < t_hit < 2.0 * math.pi / params.j_tun


def test_first_transfer_none_without_transfer():
    spec00, specn0 = spectra_for(ModelParams(n_photons=4, omega0=1.0, g=1.2, j_tun=0.0))
    ret, tra = evolve(spec00, specn0, 5.0, 0.01)
    assert first_transfer_time(tra, 0.5) is None


def test_first_transfer_threshold_validation():
    spec00, spec10 = harmonic_line_spectra(ModelParams(n_photons=2, j_tun=0.8))
    _, tra = evolve(spec00, spec10, 5.0, 0.01)
    with pytest.raises(ValueError):
        first_transfer_time(tra, 0.0)
    with pytest.raises(ValueError):
        first_transfer_time(tra, 1.5)
