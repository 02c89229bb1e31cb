"""Shared domain types and the pole/residue spectral formalism.

Every model in this package reduces to a finite list of spectral lines:
real energies ``E_j`` with complex weights ``w_j``.  Densities, resolvent
samples and time series are then exact finite sums over those lines,

* smoothed density   ``(1/pi) sum_j w_j eps / (eps^2 + (E - E_j)^2)``
* resolvent element  ``sum_j w_j / (z - E_j)``
* amplitude          ``sum_j w_j exp(-i E_j t)``

so no discretized integral ever enters.  Diagonal spectra carry real
non-negative weights summing to one; off-diagonal spectra may carry
signed or complex weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "UnsupportedModelError",
    "NumericalFailureError",
    "NearPoleError",
    "ModelParams",
    "SpectralLine",
    "LineSpectrum",
    "ResolventSample",
    "AmplitudeSeries",
    "merge_degenerate_lines",
    "smoothed_density",
    "amplitude_from_lines",
    "resolvent_from_lines",
]

MERGE_RTOL = 1e-9
DIAGONAL_SUM_TOL = 1e-10
AMPLITUDE_BOUND_TOL = 1e-9

_TIME_CHUNK = 65536


class UnsupportedModelError(ValueError):
    """A configuration falls outside the closed-form scope of a model."""


class NumericalFailureError(RuntimeError):
    """A numerical routine could not produce a reliable result."""


class NearPoleError(NumericalFailureError):
    """A resolvent evaluation landed on (or under machine precision of) a pole.

    Attributes
    ----------
    depth : int
        Recursion depth at which the evaluation broke down.
    """

    def __init__(self, message: str, depth: int):
        super().__init__(message)
        self.depth = depth


@dataclass(frozen=True)
class ModelParams:
    """Physical configuration of the cavity models, hbar = 1.

    Parameters
    ----------
    n_photons : int
        Total photon number N of the prepared Fock state, N >= 1.
    omega0 : float
        Cavity frequency (energy units).
    g : float
        Atom-photon coupling strength.
    j_tun : float
        Inter-cavity tunneling rate J, J >= 0.
    sigma : int
        Dressed-branch sign, +1 or -1.
    delta : float
        Atom-cavity detuning, used by the single-cavity model only.
    """

    n_photons: int
    omega0: float = 0.0
    g: float = 0.0
    j_tun: float = 0.0
    sigma: int = 1
    delta: float = 0.0

    def __post_init__(self):
        if int(self.n_photons) != self.n_photons or self.n_photons < 1:
            raise ValueError(f"n_photons must be an integer >= 1, got {self.n_photons}")
        if self.sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma}")
        if self.j_tun < 0:
            raise ValueError(f"j_tun must be >= 0, got {self.j_tun}")


@dataclass(frozen=True)
class SpectralLine:
    """One pole of the resolvent: an energy with its spectral weight."""

    energy: float
    weight: complex


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class LineSpectrum:
    """Finite line spectrum, strictly ascending in energy.

    ``kind`` is ``"diagonal"`` for densities of the form |<E_j|psi>|^2
    (real weights >= 0, summing to 1) and ``"offdiagonal"`` for cross
    densities <psi'|E_j><E_j|psi> (signed or complex weights).
    """

    energies: np.ndarray
    weights: np.ndarray
    kind: str

    def __post_init__(self):
        energies = _readonly(np.asarray(self.energies, dtype=float))
        if self.kind == "diagonal":
            w = np.asarray(self.weights)
            if np.iscomplexobj(w) and np.max(np.abs(w.imag), initial=0.0) > 1e-14:
                raise ValueError("diagonal spectrum requires real weights")
            weights = _readonly(np.real(w).astype(float))
        elif self.kind == "offdiagonal":
            weights = _readonly(np.asarray(self.weights, dtype=complex))
        else:
            raise ValueError(f"kind must be 'diagonal' or 'offdiagonal', got {self.kind!r}")
        if energies.ndim != 1 or energies.shape != weights.shape:
            raise ValueError("energies and weights must be 1-d arrays of equal length")
        if energies.size == 0:
            raise ValueError("a spectrum needs at least one line")
        if np.any(np.diff(energies) <= 0):
            raise ValueError("energies must be strictly ascending; merge degenerate lines first")
        if self.kind == "diagonal":
            if np.any(weights < -1e-14):
                raise ValueError("diagonal weights must be non-negative")
            total = float(np.sum(weights))
            if abs(total - 1.0) > DIAGONAL_SUM_TOL:
                raise ValueError(f"diagonal weights must sum to 1, got {total!r}")
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "weights", weights)

    @property
    def lines(self) -> tuple[SpectralLine, ...]:
        return tuple(SpectralLine(float(e), complex(w))
                     for e, w in zip(self.energies, self.weights))

    def __len__(self) -> int:
        return int(self.energies.size)

    def __iter__(self) -> Iterator[SpectralLine]:
        return iter(self.lines)


@dataclass(frozen=True)
class ResolventSample:
    """Value of a resolvent matrix element at one complex energy."""

    z: complex
    value: complex


@dataclass(frozen=True)
class AmplitudeSeries:
    """Complex amplitude samples on a uniform time grid."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = _readonly(np.asarray(self.times, dtype=float))
        values = _readonly(np.asarray(self.values, dtype=complex))
        if times.ndim != 1 or times.shape != values.shape or times.size == 0:
            raise ValueError("times and values must be non-empty 1-d arrays of equal length")
        if times.size > 1:
            steps = np.diff(times)
            tol = 1e-9 * max(1.0, abs(float(times[-1])))
            if np.max(np.abs(steps - steps[0])) > tol:
                raise ValueError("time grid must be uniform")
        if np.max(np.abs(values)) > 1.0 + AMPLITUDE_BOUND_TOL:
            raise ValueError("amplitudes of normalized states cannot exceed modulus 1")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def dt(self) -> float:
        if self.times.size < 2:
            return 0.0
        return float(self.times[1] - self.times[0])

    def __len__(self) -> int:
        return int(self.times.size)


def merge_degenerate_lines(
    energies: Sequence[float],
    weight_sets: Sequence[Sequence[complex]],
    rtol: float = MERGE_RTOL,
) -> tuple[np.ndarray, list[np.ndarray]]:
    """Cluster near-degenerate energies and sum weights within each cluster.

    Energies whose consecutive gaps fall below ``rtol * max(1, |E|)`` are
    treated as one level.  Every weight set is clustered with the same
    partition, so spectra sharing an eigenbasis keep matching line counts.
    The merged energy is the arithmetic mean of the cluster members.

    Parameters
    ----------
    energies : sequence of float
        Level positions, in any order.
    weight_sets : sequence of weight sequences
        One or more weight arrays aligned with ``energies``.
    rtol : float
        Relative degeneracy threshold.

    Returns
    -------
    merged_energies : ndarray
        Strictly ascending cluster energies.
    merged_weight_sets : list of ndarray
        Cluster-summed weights, one array per input set.
    """
    e = np.asarray(energies, dtype=float)
    if e.ndim != 1 or e.size == 0:
        raise ValueError("energies must be a non-empty 1-d sequence")
    sets = [np.asarray(w) for w in weight_sets]
    for w in sets:
        if w.shape != e.shape:
            raise ValueError("every weight set must match the energy count")
    order = np.argsort(e, kind="stable")
    e = e[order]
    sets = [w[order] for w in sets]

    boundaries = [0]
    for i in range(1, e.size):
        tol = rtol * max(1.0, abs(e[i]))
        if e[i] - e[i - 1] > tol:
            boundaries.append(i)
    boundaries.append(e.size)

    merged_e = np.empty(len(boundaries) - 1)
    merged_sets = [np.empty(len(boundaries) - 1, dtype=w.dtype) for w in sets]
    for j in range(len(boundaries) - 1):
        lo, hi = boundaries[j], boundaries[j + 1]
        merged_e[j] = e[lo:hi].mean()
        for w, out in zip(sets, merged_sets):
            out[j] = w[lo:hi].sum()
    return merged_e, merged_sets


def smoothed_density(spec: LineSpectrum, energies, epsilon: float):
    """Lorentzian-broadened spectral density on an energy grid.

    Evaluates ``(1/pi) sum_j w_j eps / (eps^2 + (E - E_j)^2)``.  The result
    is a real array for diagonal spectra and complex for off-diagonal ones.

    Parameters
    ----------
    spec : LineSpectrum
    energies : array_like
        Evaluation grid, non-empty.
    epsilon : float
        Broadening width, must be positive.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    grid = np.asarray(energies, dtype=float)
    if grid.size == 0:
        raise ValueError("energy grid must be non-empty")
    lorentz = epsilon / (epsilon**2 + (grid[:, None] - spec.energies[None, :]) ** 2)
    out = lorentz @ spec.weights / np.pi
    if spec.kind == "diagonal":
        return np.real(out)
    return out


def amplitude_from_lines(spec: LineSpectrum, times) -> AmplitudeSeries:
    """Synthesize the time amplitude ``sum_j w_j exp(-i E_j t)``.

    The sum is exact for each grid point; accuracy is limited only by
    rounding in the complex exponentials.
    """
    t = np.asarray(times, dtype=float)
    values = np.empty(t.shape, dtype=complex)
    for start in range(0, t.size, _TIME_CHUNK):
        block = t[start:start + _TIME_CHUNK]
        phases = np.exp(-1j * np.outer(block, spec.energies))
        values[start:start + _TIME_CHUNK] = phases @ spec.weights
    return AmplitudeSeries(times=t, values=values)


def resolvent_from_lines(spec: LineSpectrum, z: complex) -> ResolventSample:
    """Evaluate the resolvent matrix element ``sum_j w_j / (z - E_j)``."""
    zc = complex(z)
    value = complex(np.sum(spec.weights / (zc - spec.energies)))
    return ResolventSample(z=zc, value=value)
