"""Engineered-reservoir rates and their squeezed-vacuum description.

The bichromatic drive turns the phonon bath into an effective reservoir for
the dot described by the triple (gamma_s, gamma_n, gamma_m): incoherent
damping, incoherent pumping, and the two-photon correlation strength.  This
module builds the triple from (gamma_1, gamma_2, nbar, phi), classifies the
regime by the sign of gamma_2 - gamma_1, and maps the triple onto the
standard squeezed-field picture (N, |M|) together with the split of N into
maximally squeezed (Ns) and thermal background (Nb) phonons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

REGIME_ORDINARY = "ordinary"   # gamma_2 > gamma_1: net damping
REGIME_INVERTED = "inverted"   # gamma_1 > gamma_2: net pumping
REGIME_PERFECT = "perfect"     # gamma_1 = gamma_2: one quadrature decoherence-free

#: Relative tolerance below which gamma_1 and gamma_2 count as equal; avoids
#: catastrophic cancellation in 1/(gamma_s - gamma_n).
EQUAL_RATE_RTOL = 1e-9

#: Default grids for the ratio datasets: nbar in [0, 3], gamma2/gamma1 in (1, 10].
DEFAULT_NBAR_GRID = np.linspace(0.0, 3.0, 201)
DEFAULT_RATIO_GRID = np.linspace(1.0, 10.0, 202)[1:]

_IDENTITY_RTOL = 1e-12


@dataclass(frozen=True)
class ReservoirRates:
    """Effective-reservoir triple plus provenance.

    gamma_s, gamma_n, gamma_m are in GHz, phi is the squeezing phase in
    radians, gamma_rad the radiative rate of the dot outside the engineered
    reservoir.  The constructor enforces the exact determinant identity
    gamma_s*gamma_n - gamma_m**2 = nbar*(nbar+1)*(gamma1-gamma2)**2.
    """

    gamma_s: float
    gamma_n: float
    gamma_m: float
    phi: float
    gamma_rad: float
    gamma1: float
    gamma2: float
    nbar: float

    def __post_init__(self):
        for name in ("gamma_s", "gamma_n", "gamma_m", "gamma_rad",
                     "gamma1", "gamma2", "nbar"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        lhs = self.gamma_s * self.gamma_n - self.gamma_m**2
        rhs = self.nbar * (self.nbar + 1.0) * (self.gamma1 - self.gamma2) ** 2
        scale = max(self.gamma_s * self.gamma_n, self.gamma_m**2, abs(rhs))
        if abs(lhs - rhs) > max(_IDENTITY_RTOL * scale, 1e-300):
            raise ValueError(
                f"inconsistent reservoir triple: gamma_s*gamma_n - gamma_m^2 = {lhs!r} "
                f"but nbar(nbar+1)(gamma1-gamma2)^2 = {rhs!r}")

    @property
    def is_perfect(self):
        """True when gamma_1 = gamma_2 within the regime tolerance."""
        return abs(self.gamma1 - self.gamma2) <= EQUAL_RATE_RTOL * max(
            self.gamma1, self.gamma2)


@dataclass(frozen=True)
class SqueezingDescriptor:
    """Squeezed-field picture of the engineered reservoir.

    ``regime`` is one of the REGIME_* strings; ``gamma_eff`` the effective
    emission rate (gamma or gamma_I); ``n_photons``/``m_abs`` the occupation
    N and correlation |M| (math.inf sentinels in the perfect regime);
    ``n_squeezed``/``n_background`` the split N = Ns + Nb with
    Ns(Ns+1) = |M|**2; ``quantum`` flags |M| > N.
    """

    regime: str
    gamma_eff: float
    n_photons: float
    m_abs: float
    n_squeezed: float
    n_background: float
    quantum: bool


def reservoir_rates(gamma1, gamma2, nbar, phi1=0.0, phi2=0.0, gamma_rad=0.0):
    """Build the reservoir triple from the two drive-induced rates.

    gamma_s = gamma1*nbar + gamma2*(nbar+1)
    gamma_n = gamma1*(nbar+1) + gamma2*nbar
    gamma_m = (2*nbar+1)*sqrt(gamma1*gamma2)
    phi     = (phi1 + phi2)/2, with 2*phi reduced to [0, 2*pi)
    """
    if gamma1 < 0 or gamma2 < 0:
        raise ValueError("gamma1 and gamma2 must be >= 0")
    if nbar < 0:
        raise ValueError(f"nbar must be >= 0, got {nbar}")
    if gamma_rad < 0:
        raise ValueError(f"gamma_rad must be >= 0, got {gamma_rad}")
    gamma_s = gamma1 * nbar + gamma2 * (nbar + 1.0)
    gamma_n = gamma1 * (nbar + 1.0) + gamma2 * nbar
    gamma_m = (2.0 * nbar + 1.0) * math.sqrt(gamma1 * gamma2)
    phi = ((phi1 + phi2) % (2.0 * math.pi)) / 2.0
    return ReservoirRates(gamma_s=gamma_s, gamma_n=gamma_n, gamma_m=gamma_m,
                          phi=phi, gamma_rad=gamma_rad,
                          gamma1=gamma1, gamma2=gamma2, nbar=nbar)


def map_to_squeezing(rates):
    """Map the reservoir triple onto (N, |M|, Ns, Nb) with regime bookkeeping.

    Ordinary regime (gamma_2 > gamma_1): gamma/2 = gamma_s - gamma_n,
    N = gamma_n/(gamma_s - gamma_n), |M| = gamma_m/(gamma_s - gamma_n).
    Inverted regime mirrors the mapping under gamma_s <-> gamma_n.  The
    perfect regime (gamma_1 = gamma_2) is the N -> inf limit of a maximally
    correlated field and is reported with inf sentinels (Nb -> 0 there).
    """
    if rates.is_perfect:
        return SqueezingDescriptor(
            regime=REGIME_PERFECT, gamma_eff=0.0,
            n_photons=math.inf, m_abs=math.inf,
            n_squeezed=math.inf, n_background=0.0,
            quantum=True)

    if rates.gamma2 > rates.gamma1:
        regime = REGIME_ORDINARY
        half_gamma = rates.gamma_s - rates.gamma_n
        n_photons = rates.gamma_n / half_gamma
    else:
        regime = REGIME_INVERTED
        half_gamma = rates.gamma_n - rates.gamma_s
        n_photons = rates.gamma_s / half_gamma
    gamma_eff = 2.0 * half_gamma
    m_abs = rates.gamma_m / half_gamma

    # Split N into maximally squeezed and thermal background parts.
    u = 2.0 * math.sqrt(rates.gamma1 * rates.gamma2) / gamma_eff
    w = (rates.gamma1 + rates.gamma2) / gamma_eff
    root = math.sqrt(4.0 * rates.nbar * (rates.nbar + 1.0) * u**2 + w**2)
    n_squeezed = root - 0.5
    n_background = (2.0 * rates.nbar + 1.0) * w - root

    return SqueezingDescriptor(
        regime=regime, gamma_eff=gamma_eff,
        n_photons=n_photons, m_abs=m_abs,
        n_squeezed=n_squeezed, n_background=max(n_background, 0.0),
        quantum=m_abs > n_photons)


def quantum_threshold(gamma1, gamma2):
    """Largest nbar at which the reservoir correlations are quantum (|M| > N).

    Returns sqrt(gamma1)/(sqrt(gamma2)-sqrt(gamma1)) for gamma2 > gamma1 and
    the mirrored expression otherwise; +inf for gamma1 = gamma2 (quantum at
    every nbar).
    """
    if gamma1 <= 0 or gamma2 <= 0:
        raise ValueError("gamma1 and gamma2 must be > 0")
    if gamma1 == gamma2:
        return math.inf
    r1, r2 = math.sqrt(gamma1), math.sqrt(gamma2)
    if gamma2 > gamma1:
        return r1 / (r2 - r1)
    return r2 / (r1 - r2)


def _ordinary_arrays(ratio, nbar):
    """Vectorized (N, |M|, Ns, Nb) for gamma1 = 1, gamma2 = ratio > 1."""
    half_gamma = ratio - 1.0                      # gamma_s - gamma_n
    gamma_n = (nbar + 1.0) + ratio * nbar
    n_photons = gamma_n / half_gamma
    m_abs = (2.0 * nbar + 1.0) * np.sqrt(ratio) / half_gamma
    u = np.sqrt(ratio) / half_gamma               # 2*sqrt(g1*g2)/gamma
    w = (1.0 + ratio) / (2.0 * half_gamma)
    root = np.sqrt(4.0 * nbar * (nbar + 1.0) * u**2 + w**2)
    n_squeezed = root - 0.5
    n_background = (2.0 * nbar + 1.0) * w - root
    return n_photons, m_abs, n_squeezed, n_background


def figure3_dataset(nbar_grid=None, ratio_grid=None):
    """Table of |M|/N over (nbar, gamma2/gamma1), ordinary regime.

    Returns an array of rows (nbar, ratio, |M|/N) with nbar as the outer
    loop.  The |M|/N = 1 contour coincides with ``quantum_threshold``.
    """
    nbar_grid = DEFAULT_NBAR_GRID if nbar_grid is None else np.asarray(nbar_grid, float)
    ratio_grid = DEFAULT_RATIO_GRID if ratio_grid is None else np.asarray(ratio_grid, float)
    if np.any(ratio_grid <= 1.0):
        raise ValueError("ratio grid must satisfy gamma2/gamma1 > 1")
    nn, rr = np.meshgrid(nbar_grid, ratio_grid, indexing="ij")
    n_photons, m_abs, _, _ = _ordinary_arrays(rr, nn)
    value = m_abs / n_photons
    return np.column_stack([nn.ravel(), rr.ravel(), value.ravel()])


def figure4_dataset(nbar_grid=None, ratio_grid=None):
    """Table of Nb/(|M| - Ns) over (nbar, gamma2/gamma1), ordinary regime.

    The ratio exceeds 1 exactly where the background overwhelms the quantum
    correlations, i.e. for nbar > 1/(sqrt(gamma2/gamma1) - 1).  Points where
    the denominator degenerates (|M| = Ns = 0) are emitted as NaN.
    """
    nbar_grid = DEFAULT_NBAR_GRID if nbar_grid is None else np.asarray(nbar_grid, float)
    ratio_grid = DEFAULT_RATIO_GRID if ratio_grid is None else np.asarray(ratio_grid, float)
    if np.any(ratio_grid <= 1.0):
        raise ValueError("ratio grid must satisfy gamma2/gamma1 > 1")
    nn, rr = np.meshgrid(nbar_grid, ratio_grid, indexing="ij")
    _, m_abs, n_squeezed, n_background = _ordinary_arrays(rr, nn)
    denom = m_abs - n_squeezed
    with np.errstate(divide="ignore", invalid="ignore"):
        value = np.where(denom > 0.0, n_background / denom, np.nan)
    return np.column_stack([nn.ravel(), rr.ravel(), value.ravel()])
