"""Recursive projection evaluation of the sector resolvent.

The N-photon sector (N even) of two exchange-symmetric cavities splits
into nested two-dimensional subspaces spanned by the mirror pairs
{|N/2+k, N/2-k>, |N/2-k, N/2+k>}, k = 1..N/2, around the single balanced
center state |N/2, N/2>.  Because tunneling only connects pair k to pair
k+1, the resolvent on pair k+1 follows from the resolvent on everything
inside it by a 2x2 block continued fraction.  Exchange symmetry keeps
every block of the form [[a, b], [b, a]], so two complex coefficients per
depth suffice:

    D = z - f(k+1) - t_k^2 a_k        B = t_k^2 b_k
    a_{k+1} = D / (D^2 - B^2)         b_{k+1} = B / (D^2 - B^2)

where f(k) is the pair energy and t_k^2 the squared tunneling amplitude
into the next pair.  After N/2 steps a and b are the diagonal and cross
resolvent elements on the edge states |N,0>, |0,N>.

The walk is seeded at depth 0 with a = b = 1/(z - f(0)): the depth-0
"pair" is the center state counted twice, so its diagonal and cross
elements coincide.  b is built purely by multiplication and division, so
it stays relatively accurate even at 1e-200 scales where the resolvent
cross element is exponentially small.

Internally the recursion runs in the shifted variable y = z - omega0 N,
which removes the constant harmonic offset from every subtraction. That
makes the sign symmetry (y, g) -> (-y, -g) hold exactly in floating
point, not just analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import ModelParams, NearPoleError, UnsupportedModelError

__all__ = [
    "RpmState",
    "pair_energy",
    "pair_coupling_sq",
    "rpm_walk",
    "rpm_resolvent",
    "rpm_spectra",
    "check_sign_symmetry",
]

DENOMINATOR_FLOOR = 1e-300


@dataclass(frozen=True)
class RpmState:
    """Recursion state at one depth.

    ``a`` is the diagonal resolvent element on either member of pair ``k``
    of the chain truncated at that pair; ``b`` is the element crossing the
    pair.  At depth 0 both equal the center-state resolvent 1/(z - f(0)).
    """

    k: int
    a: complex
    b: complex
    z: complex


def pair_energy(params: ModelParams, k: int) -> float:
    """Diagonal energy of the mirror pair at depth k.

    Both members carry ``omega0 N + 2 sigma g (sqrt(N/2+k) + sqrt(N/2-k))``.
    """
    return params.n_photons * params.omega0 + _pair_interaction(params, k)


def _pair_interaction(params: ModelParams, k) -> float:
    half = params.n_photons / 2.0
    return 2.0 * params.sigma * params.g * (math.sqrt(half + k) + math.sqrt(half - k))


def pair_coupling_sq(n_photons: int, k: int, j_tun: float) -> float:
    """Squared tunneling amplitude connecting pair k to pair k+1:
    J^2 (N/2 + k + 1)(N/2 - k)."""
    half = n_photons / 2.0
    return j_tun**2 * (half + k + 1.0) * (half - k)


def _check_even(params: ModelParams):
    if params.n_photons % 2 != 0:
        raise UnsupportedModelError(
            f"the pair recursion needs an even photon number, got N={params.n_photons}"
        )


def rpm_walk(params: ModelParams, z: complex) -> Iterator[RpmState]:
    """Yield the recursion state at every depth from 0 through N/2.

    Scalar reference path used for validation and failure localization;
    grid evaluation goes through :func:`rpm_resolvent`.
    """
    _check_even(params)
    zc = complex(z)
    if zc.imag == 0.0:
        raise ValueError("evaluate off the real axis: poles live on it")
    y = zc - params.n_photons * params.omega0
    a = b = 1.0 / (y - _pair_interaction(params, 0))
    yield RpmState(k=0, a=a, b=b, z=zc)
    for k in range(params.n_photons // 2):
        t2 = pair_coupling_sq(params.n_photons, k, params.j_tun)
        d = y - _pair_interaction(params, k + 1) - t2 * a
        bb = t2 * b
        den = (d - bb) * (d + bb)
        if abs(den) < DENOMINATOR_FLOOR:
            raise NearPoleError(
                f"resolvent pole hit at depth {k + 1} (z={zc!r}); "
                "move z further off the real axis",
                depth=k + 1,
            )
        a, b = d / den, bb / den
        yield RpmState(k=k + 1, a=a, b=b, z=zc)


def rpm_resolvent(params: ModelParams, z):
    """Edge-state resolvent elements by the pair recursion.

    Parameters
    ----------
    params : ModelParams
        N must be even.
    z : complex scalar or array
        Evaluation points, strictly off the real axis.

    Returns
    -------
    (a, b) : complex scalars or arrays
        ``a = <N,0|(z-H)^-1|N,0>`` and ``b = <0,N|(z-H)^-1|N,0>``.

    Raises
    ------
    UnsupportedModelError
        For odd N.
    NearPoleError
        If a pair denominator underflows; carries the failing depth.
    """
    _check_even(params)
    zs = np.asarray(z, dtype=complex)
    if np.any(zs.imag == 0.0):
        raise ValueError("evaluate off the real axis: poles live on it")
    y = zs - params.n_photons * params.omega0
    a = 1.0 / (y - _pair_interaction(params, 0))
    b = a
    for k in range(params.n_photons // 2):
        t2 = pair_coupling_sq(params.n_photons, k, params.j_tun)
        d = y - _pair_interaction(params, k + 1) - t2 * a
        bb = t2 * b
        den = (d - bb) * (d + bb)
        if np.min(np.abs(den)) < DENOMINATOR_FLOOR:
            raise NearPoleError(
                f"resolvent pole hit at depth {k + 1}; "
                "move z further off the real axis",
                depth=k + 1,
            )
        a, b = d / den, bb / den
    if zs.ndim == 0:
        return complex(a), complex(b)
    return a, b


def rpm_spectra(params: ModelParams, energies, epsilon: float):
    """Broadened spectral densities from the recursion.

    Evaluates the resolvent at ``z = E - i epsilon`` over the grid and
    returns ``((1/pi) Im a, (1/pi) Im b)`` as real arrays.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    grid = np.asarray(energies, dtype=float)
    if grid.size == 0:
        raise ValueError("energy grid must be non-empty")
    a, b = rpm_resolvent(params, grid - 1j * epsilon)
    return np.imag(a) / np.pi, np.imag(b) / np.pi


def check_sign_symmetry(params: ModelParams, z) -> dict:
    """Verify the sign symmetry of the recursion at the given points.

    Flipping the sign of the coupling g while reflecting the energy
    argument through the harmonic offset must negate both coefficients:

        a(2 omega0 N - z, -g) = -a(z, g)     (same for b)

    With omega0 = 0 this is the plain inversion (z, g) -> (-z, -g).
    Returns a report dict with the maximum deviations; report-only, never
    raises on violation.
    """
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    a1, b1 = rpm_resolvent(params, zs)
    flipped = ModelParams(
        n_photons=params.n_photons,
        omega0=params.omega0,
        g=-params.g,
        j_tun=params.j_tun,
        sigma=params.sigma,
        delta=params.delta,
    )
    shift = 2.0 * (params.omega0 * params.n_photons)
    a2, b2 = rpm_resolvent(flipped, shift - zs)
    dev_a = float(np.max(np.abs(a2 + a1)))
    dev_b = float(np.max(np.abs(b2 + b1)))
    tol = 1e-12
    return {
        "deviation_a": dev_a,
        "deviation_b": dev_b,
        "tolerance": tol,
        "passed": bool(dev_a <= tol and dev_b <= tol),
        "n_points": int(zs.size),
    }
