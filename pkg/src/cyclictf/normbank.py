"""Discrete modulation-space and Wiener-amalgam norms.

Integrals become plain sums with unit grid spacing; infinity exponents are
handled as maxima.  The modulation norm keeps the continuous variable order:
inner exponent p over the time variable x, outer exponent q over the
frequency variable omega.  Amalgam norms swap the roles (inner over omega,
outer over x), so that on the grid

    || f ||_{M^{p,q}_{u (x) w}, window g}  ==  || Ff ||_{W(FL^p_u, L^q_w), window Fg}

exactly, the Fourier image relation between the two scales.

The symbol-class functionals use the 4-variable STFT of N x N grids:
sjostrand_norm sums over the frequency offset of the largest-in-position
STFT magnitude; fsjostrand_norm swaps the two roles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .phasespace import Weight, polynomial_weight
from .transforms import stft, stft_grid

__all__ = [
    "MixedNormSpec",
    "amalgam_norm",
    "fsjostrand_norm",
    "mixed_norm",
    "modulation_norm",
    "sjostrand_norm",
]


@dataclass(frozen=True)
class MixedNormSpec:
    """Exponent pair (p, q) in [1, inf] and a weight on Z_N^2."""

    p: float
    q: float
    m: Weight = field(default_factory=lambda: polynomial_weight(0.0))

    def __post_init__(self) -> None:
        for e in (self.p, self.q):
            if not (e >= 1.0):
                raise ValueError("exponents must satisfy p, q >= 1")


def _lp(values: np.ndarray, p: float, axis: int) -> np.ndarray:
    if np.isinf(p):
        return values.max(axis=axis)
    return (values**p).sum(axis=axis) ** (1.0 / p)


def mixed_norm(grid: np.ndarray, spec: MixedNormSpec) -> float:
    """Weighted L^{p,q} norm of an N x N grid indexed (x, omega).

    Inner l^p over x with the weight, outer l^q over omega.
    """
    arr = np.abs(np.asarray(grid, dtype=complex))
    weighted = arr * spec.m.on_grid(arr.shape[0])
    inner = _lp(weighted, spec.p, axis=0)  # collapse x, one value per omega
    return float(_lp(inner, spec.q, axis=0))


def modulation_norm(f: np.ndarray, g: np.ndarray, spec: MixedNormSpec) -> float:
    """|| V_g f ||_{L^{p,q}_m}; window-dependent, equivalent across windows."""
    return mixed_norm(stft(f, g), spec)


def amalgam_norm(
    f: np.ndarray,
    g: np.ndarray,
    p: float,
    q: float,
    u: Weight | None = None,
    w: Weight | None = None,
) -> float:
    """Wiener amalgam norm W(FL^p_u, L^q_w): inner over omega, outer over x.

    u and w are one-dimensional weights (on the frequency and time variable
    respectively); both default to 1.
    """
    if not (p >= 1.0 and q >= 1.0):
        raise ValueError("exponents must satisfy p, q >= 1")
    coeff = np.abs(stft(f, g))
    n = coeff.shape[0]
    uvals = np.ones(n) if u is None else u.on_grid(n)
    wvals = np.ones(n) if w is None else w.on_grid(n)
    inner = _lp(coeff * uvals[None, :], p, axis=1)  # collapse omega, per x
    return float(_lp(inner * wvals, q, axis=0))


def sjostrand_norm(sigma: np.ndarray, window: np.ndarray, v: Weight) -> float:
    """sum_zeta sup_z |V_W sigma(z, zeta)| v(zeta) over the symbol STFT."""
    mags = np.abs(stft_grid(sigma, window))
    n = mags.shape[0]
    sup_pos = mags.max(axis=(0, 1))  # (q1, q2) grid
    return float(np.sum(sup_pos * v.on_grid(n)))


def fsjostrand_norm(sigma: np.ndarray, window: np.ndarray, v: Weight) -> float:
    """sum_z sup_zeta |V_W sigma(z, zeta)| v(z); the Fourier image of sjostrand_norm."""
    mags = np.abs(stft_grid(sigma, window))
    n = mags.shape[0]
    sup_freq = mags.max(axis=(2, 3))  # (p1, p2) grid
    return float(np.sum(sup_freq * v.on_grid(n)))
