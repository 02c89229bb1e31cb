"""Joint return/transition statistics and N00N-state scoring.

Sampling the two amplitude moduli over a long time window estimates how
often the dynamics visits states with appreciable weight on both edge
Fock states at once, which is the precondition for dynamically forming
the balanced superposition (|N,0> + |0,N>) / sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import AmplitudeSeries, LineSpectrum, ModelParams
from .dynamics import evolve
from .effective import build_sector_hamiltonian, diagonalize, spectra_from_eigen

__all__ = [
    "JointHistogram",
    "NoonFeasibility",
    "sample_joint",
    "noon_score",
    "noon_feasibility",
    "default_sampling_window",
]

HISTOGRAM_SUM_TOL = 1e-12
SCORE_INPUT_TOL = 1e-9


@dataclass(frozen=True)
class JointHistogram:
    """Normalized B x B histogram of (|c0|, |cN|) over [0,1]^2."""

    bins: np.ndarray
    n_samples: int
    bin_width: float

    def __post_init__(self):
        b = np.asarray(self.bins, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] < 2:
            raise ValueError("bins must be a square matrix of size >= 2")
        if np.any(b < 0):
            raise ValueError("histogram mass cannot be negative")
        if abs(float(b.sum()) - 1.0) > HISTOGRAM_SUM_TOL:
            raise ValueError("histogram must be normalized to total mass 1")
        if not math.isclose(self.bin_width, 1.0 / b.shape[0], rel_tol=1e-12):
            raise ValueError("bin_width must equal 1 / B")
        b = np.array(b)
        b.flags.writeable = False
        object.__setattr__(self, "bins", b)

    @property
    def size(self) -> int:
        return int(self.bins.shape[0])

    def bin_centers(self) -> np.ndarray:
        b = self.size
        return (np.arange(b) + 0.5) / b


def sample_joint(ret: AmplitudeSeries, tra: AmplitudeSeries, bins: int = 50) -> JointHistogram:
    """Histogram the joint moduli (|return(t)|, |transition(t)|).

    Both series must share the identical time grid.  Mass is normalized to
    one; the axes are amplitude moduli on [0, 1].
    """
    if bins < 2:
        raise ValueError(f"need at least 2 bins, got {bins}")
    if not np.array_equal(ret.times, tra.times):
        raise ValueError("return and transition series must share one time grid")
    # rounding can push a modulus a few ulp past 1; clip instead of dropping
    counts, _, _ = np.histogram2d(
        np.minimum(np.abs(ret.values), 1.0), np.minimum(np.abs(tra.values), 1.0),
        bins=bins, range=[[0.0, 1.0], [0.0, 1.0]],
    )
    n = len(ret)
    return JointHistogram(bins=counts / n, n_samples=n, bin_width=1.0 / bins)


def noon_score(return_amp: complex, transition_amp: complex) -> float:
    """Best overlap-squared with the balanced edge superposition.

    Maximized over the relative phase of the target state, the overlap
    squared is ``(|c0| + |cN|)^2 / 2``; 1 for a perfect balanced
    superposition, 0.5 for a bare edge Fock state.
    """
    c0 = abs(return_amp)
    cn = abs(transition_amp)
    if c0 > 1.0 + SCORE_INPUT_TOL or cn > 1.0 + SCORE_INPUT_TOL:
        raise ValueError("amplitude moduli of normalized states cannot exceed 1")
    return (c0 + cn) ** 2 / 2.0


def default_sampling_window(params: ModelParams, spec00: LineSpectrum) -> tuple[float, float]:
    """Default (t_max, dt) for histogram sampling.

    The window covers one thousand tunneling half-periods and the step
    oversamples the fastest spectral beat (the full line span) twentyfold.
    """
    if params.j_tun > 0:
        t_max = 1000.0 * math.pi / params.j_tun
    else:
        t_max = 50.0
    span = float(spec00.energies[-1] - spec00.energies[0])
    if span > 0:
        dt = 2.0 * math.pi / (20.0 * span)
    else:
        dt = 0.01
    return t_max, dt


@dataclass(frozen=True)
class NoonFeasibility:
    """Summary triple of a feasibility scan."""

    max_score: float
    argmax_time: float
    fraction_above: float
    threshold: float
    n_samples: int


def noon_feasibility(
    params: ModelParams,
    t_max: float | None = None,
    dt: float | None = None,
    threshold: float = 0.55,
) -> NoonFeasibility:
    """Scan the evolved dynamics and summarize N00N-state reachability.

    Evolves the sector eigen-spectra over the window, scores every sample
    with :func:`noon_score` and reports the best score, the earliest time
    attaining it and the fraction of samples scoring above ``threshold``.
    """
    spec00, specn0 = spectra_from_eigen(diagonalize(build_sector_hamiltonian(params)))
    if t_max is None or dt is None:
        auto_tmax, auto_dt = default_sampling_window(params, spec00)
        t_max = auto_tmax if t_max is None else t_max
        dt = auto_dt if dt is None else dt
    ret, tra = evolve(spec00, specn0, t_max, dt)
    scores = (np.abs(ret.values) + np.abs(tra.values)) ** 2 / 2.0
    best = int(np.argmax(scores))
    return NoonFeasibility(
        max_score=float(scores[best]),
        argmax_time=float(ret.times[best]),
        fraction_above=float(np.mean(scores > threshold)),
        threshold=threshold,
        n_samples=len(ret),
    )
