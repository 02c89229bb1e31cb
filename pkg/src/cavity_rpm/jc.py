"""Single cavity coupled to a two-level atom.

Closed-form spectrum and dressed eigenstates, resonant Rabi dynamics of a
Fock state, and the dressed-basis photon matrix elements that control
tunneling between two such cavities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    AmplitudeSeries,
    LineSpectrum,
    ModelParams,
    UnsupportedModelError,
    merge_degenerate_lines,
)

__all__ = [
    "DressedState",
    "jc_energy",
    "dressed_state",
    "rabi_amplitudes",
    "rabi_line_spectra",
    "dressed_photon_matrix_element",
]


@dataclass(frozen=True)
class DressedState:
    """Eigenstate mixing |n photons, excited atom> with |n+1 photons, ground atom>.

    At resonance the amplitude vector on that ordered two-state basis is
    (branch, 1) / sqrt(2).
    """

    n: int
    branch: int
    energy: float

    def amplitude_vector(self) -> np.ndarray:
        return np.array([self.branch, 1.0]) / math.sqrt(2.0)


def _check_branch(branch: int):
    if branch not in (1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch}")


def jc_energy(params: ModelParams, n: int, branch: int) -> float:
    """Energy of the dressed level (n, branch).

    Returns ``omega0 (n + 1/2) + branch sqrt(delta^2 + 4 g^2 (n+1))``.
    """
    if n < 0:
        raise ValueError(f"photon index must be >= 0, got {n}")
    _check_branch(branch)
    gap = math.sqrt(params.delta**2 + 4.0 * params.g**2 * (n + 1))
    return params.omega0 * (n + 0.5) + branch * gap


def dressed_state(params: ModelParams, n: int, branch: int) -> DressedState:
    """Dressed eigenstate with its energy."""
    return DressedState(n=n, branch=branch, energy=jc_energy(params, n, branch))


def rabi_amplitudes(params: ModelParams, n: int, times) -> tuple[AmplitudeSeries, AmplitudeSeries]:
    """Return and transition amplitudes of the initial state |n photons, ground atom>.

    Only the resonant case is supported.  The two-dimensional invariant
    subspace {|n, ground>, |n-1, excited>} gives

        return(t)     = exp(-i omega0 (n - 1/2) t) cos(2 g sqrt(n) t)
        transition(t) = -i exp(-i omega0 (n - 1/2) t) sin(2 g sqrt(n) t)

    with the transition taken onto |n-1 photons, excited atom>.

    Raises
    ------
    UnsupportedModelError
        If ``params.delta != 0``; the closed form holds at resonance only.
    """
    if params.delta != 0.0:
        raise UnsupportedModelError("Rabi closed forms require zero detuning")
    if n < 1:
        raise ValueError(f"the initial Fock state needs n >= 1 photons, got {n}")
    t = np.asarray(times, dtype=float)
    phase = np.exp(-1j * params.omega0 * (n - 0.5) * t)
    omega_r = 2.0 * params.g * math.sqrt(n)
    ret = AmplitudeSeries(times=t, values=phase * np.cos(omega_r * t))
    tra = AmplitudeSeries(times=t, values=-1j * phase * np.sin(omega_r * t))
    return ret, tra


def rabi_line_spectra(params: ModelParams, n: int) -> tuple[LineSpectrum, LineSpectrum]:
    """Line spectra of the resonant Rabi problem for the initial state |n, ground>.

    The initial state splits equally over the two dressed levels below it,
    so the diagonal density carries weight 1/2 at each of
    ``omega0 (n - 1/2) -+ 2 g sqrt(n)`` and the cross density onto
    |n-1, excited> carries weight -+ 1/2 at the same energies.
    """
    if params.delta != 0.0:
        raise UnsupportedModelError("Rabi line spectra require zero detuning")
    if n < 1:
        raise ValueError(f"the initial Fock state needs n >= 1 photons, got {n}")
    e_minus = jc_energy(params, n - 1, -1)
    e_plus = jc_energy(params, n - 1, +1)
    energies = [e_minus, e_plus]
    # sign(g) tracks which dressed branch is the symmetric combination
    s = 1.0 if params.g >= 0 else -1.0
    merged_e, (w00, w10) = merge_degenerate_lines(
        energies, [[0.5, 0.5], [-0.5 * s, 0.5 * s]]
    )
    rho00 = LineSpectrum(energies=merged_e, weights=w00, kind="diagonal")
    rho10 = LineSpectrum(energies=merged_e, weights=w10, kind="offdiagonal")
    return rho00, rho10


def dressed_photon_matrix_element(op_kind: str, k: int, branch_out: int, branch_in: int) -> float:
    """Photon ladder matrix element between dressed states.

    For ``op_kind="annihilate"`` the element between branches b', b is
    ``(sqrt(k+1) + sqrt(k)) / 2`` when b' = b and ``(sqrt(k+1) - sqrt(k)) / 2``
    otherwise.  For ``op_kind="create"`` the corresponding values are
    ``(sqrt(k+2) +- sqrt(k+1)) / 2``.  Matching branches keep an O(sqrt(k))
    element while branch flips are suppressed like 1/sqrt(k), which is what
    justifies dropping atomic flips in the coupled-cavity model.
    """
    if k < 1:
        raise ValueError(f"matrix elements are defined for k >= 1, got {k}")
    _check_branch(branch_out)
    _check_branch(branch_in)
    same = branch_out == branch_in
    if op_kind == "annihilate":
        hi, lo = math.sqrt(k + 1), math.sqrt(k)
    elif op_kind == "create":
        hi, lo = math.sqrt(k + 2), math.sqrt(k + 1)
    else:
        raise ValueError(f"op_kind must be 'annihilate' or 'create', got {op_kind!r}")
    return (hi + lo) / 2.0 if same else (hi - lo) / 2.0
