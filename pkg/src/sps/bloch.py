"""Analytic dynamics of the dot under the engineered reservoir.

Closed-form solutions of the optical Bloch equations: free decay of the
quadrature components, the driven system at resonance for squeezing phase
phi in {0, pi/2}, steady states with coherence locking in the perfect
regime, dressed-state populations, and the externally-generated squeezed
vacuum comparison case.  The brute-force counterpart lives in
:mod:`sps.oracle`; everything here must agree with it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

#: Tolerance on the Bloch-sphere containment check sx^2+sy^2+sz^2 <= 1/4.
SPHERE_TOL = 1e-12

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class BlochVector:
    """Expectation values (<Sx>, <Sy>, <Sz>) of a physical dot state."""

    sx: float
    sy: float
    sz: float

    def __post_init__(self):
        norm2 = self.sx**2 + self.sy**2 + self.sz**2
        if norm2 > 0.25 + SPHERE_TOL:
            raise ValueError(
                f"unphysical Bloch vector: |s|^2 = {norm2!r} > 1/4")

    def as_array(self):
        return np.array([self.sx, self.sy, self.sz])

    @classmethod
    def from_array(cls, arr):
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))


@dataclass(frozen=True)
class DampingTriple:
    """Damping rates (gamma_x, gamma_y, gamma_z) of the driven Bloch system.

    ``phi_choice`` records which squeezing phase (0 or pi/2) fixed the sign
    of the +-2*gamma_m terms; gamma_z = gamma_x + gamma_y always holds.
    """

    gamma_x: float
    gamma_y: float
    gamma_z: float
    phi_choice: float

    def __post_init__(self):
        if min(self.gamma_x, self.gamma_y, self.gamma_z) < 0:
            raise ValueError("damping rates must be >= 0")


def quadrature(state, phi):
    """Rotated dipole components (s_phi, s_phi_perp).

    s_phi = sx*sin(phi) + sy*cos(phi); s_phi_perp = sx*cos(phi) - sy*sin(phi).
    The map is a reflection (its own inverse at fixed phi).
    """
    s, c = math.sin(phi), math.cos(phi)
    return state.sx * s + state.sy * c, state.sx * c - state.sy * s


def _quadrature_rates(rates):
    """(gamma_phi, gamma_phi_perp): reduced and enhanced quadrature decay rates."""
    base = 0.5 * rates.gamma_rad + rates.gamma_s + rates.gamma_n
    reduced = base - 2.0 * rates.gamma_m
    if rates.is_perfect and rates.gamma_rad == 0.0:
        reduced = 0.0  # exact in the perfect regime; clears 1-ulp sqrt noise
    return max(reduced, 0.0), base + 2.0 * rates.gamma_m


def free_steady_inversion(rates):
    """Steady <Sz> of the undriven dot, -(gamma_s-gamma_n+Gamma/2)/(2(gamma_s+gamma_n+Gamma/2)).

    Positive (population inversion) exactly when gamma_n > gamma_s + Gamma/2,
    i.e. for gamma_1 sufficiently above gamma_2.
    """
    half_rad = 0.5 * rates.gamma_rad
    denom = 2.0 * (rates.gamma_s + rates.gamma_n + half_rad)
    if denom == 0.0:
        return 0.0
    return -(rates.gamma_s - rates.gamma_n + half_rad) / denom


def free_evolution(state0, rates, t):
    """Free decay of the dot in the engineered reservoir after time ``t``.

    The quadrature s_phi decays at the reduced rate Gamma/2+gamma_s+gamma_n-2*gamma_m
    (zero in the perfect regime), s_phi_perp at the enhanced rate with
    +2*gamma_m, and <Sz> relaxes exponentially to ``free_steady_inversion``.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    phi = rates.phi
    s_phi0, s_perp0 = quadrature(state0, phi)
    g_phi, g_perp = _quadrature_rates(rates)
    s_phi = s_phi0 * math.exp(-g_phi * t)
    s_perp = s_perp0 * math.exp(-g_perp * t)
    # The quadrature map is an involution: apply it again to rotate back.
    s, c = math.sin(phi), math.cos(phi)
    sx = s_phi * s + s_perp * c
    sy = s_phi * c - s_perp * s

    sz_ss = free_steady_inversion(rates)
    decay = 2.0 * (0.5 * rates.gamma_rad + rates.gamma_s + rates.gamma_n)
    sz = sz_ss + (state0.sz - sz_ss) * math.exp(-decay * t)
    return BlochVector(sx, sy, sz)


def _check_phi_choice(phi_choice):
    if not (math.isclose(phi_choice, 0.0, abs_tol=1e-12)
            or math.isclose(phi_choice, _HALF_PI, rel_tol=1e-12)):
        raise ValueError(
            f"driven analysis supports phi in {{0, pi/2}} only, got {phi_choice}")
    return math.isclose(phi_choice, 0.0, abs_tol=1e-12)


def damping_triple(rates, phi_choice):
    """Damping rates of the driven Bloch system for phi_choice in {0, pi/2}.

    phi = 0:    gamma_x = gamma_s+gamma_n+2*gamma_m, gamma_y = gamma_s+gamma_n-2*gamma_m
    phi = pi/2: the two are swapped.
    gamma_z = 2*(gamma_s+gamma_n).  A nonzero radiative rate adds Gamma/2 to
    gamma_x, gamma_y and Gamma to gamma_z (extension beyond the Gamma = 0
    regime the closed forms were derived in).  The sign assignment is fixed
    by the perfect-regime limits: phi = 0 gives gamma_y = 0 and phi = pi/2
    gives gamma_x = 0 when gamma_1 = gamma_2.
    """
    phi_is_zero = _check_phi_choice(phi_choice)
    half_rad = 0.5 * rates.gamma_rad
    base = rates.gamma_s + rates.gamma_n
    enhanced = half_rad + base + 2.0 * rates.gamma_m
    reduced = half_rad + base - 2.0 * rates.gamma_m
    if rates.is_perfect and rates.gamma_rad == 0.0:
        reduced = 0.0
    reduced = max(reduced, 0.0)
    gamma_z = rates.gamma_rad + 2.0 * base
    if phi_is_zero:
        return DampingTriple(enhanced, reduced, gamma_z, 0.0)
    return DampingTriple(reduced, enhanced, gamma_z, _HALF_PI)


def _drive_inhomogeneity(rates):
    """Constant term -(gamma_s - gamma_n + Gamma/2) in the <Sz> equation."""
    return rates.gamma_s - rates.gamma_n + 0.5 * rates.gamma_rad


def driven_steady_state(rates, omega, phi_choice, sx0=0.0):
    """Steady state of the resonantly driven dot (Rabi frequency ``omega``).

    <Sy>_s = d*Omega/(gamma_y*gamma_z + Omega^2) and
    <Sz>_s = -d*gamma_y/(gamma_y*gamma_z + Omega^2) with d = gamma_s - gamma_n
    (+Gamma/2 when radiative decay is kept).  <Sx>_s vanishes whenever
    gamma_x > 0; in the locked case (gamma_1 = gamma_2, phi = pi/2,
    gamma_x = 0) it stays at the initial coherence ``sx0``.
    """
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    triple = damping_triple(rates, phi_choice)
    denom = triple.gamma_y * triple.gamma_z + omega**2
    if denom == 0.0:
        raise ValueError(
            "steady state undefined: omega = 0 with gamma_y = 0 leaves <Sy> "
            "undamped (use free_evolution for the undriven dot)")
    d = _drive_inhomogeneity(rates)
    sy = d * omega / denom
    sz = -d * triple.gamma_y / denom
    sx = sx0 if triple.gamma_x == 0.0 else 0.0
    return BlochVector(sx, sy, sz)


def _sinch(x):
    """sinh(x)/x for complex x, stable near 0."""
    if abs(x) < 1e-6:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return cmath.sinh(x) / x


def _expm2(a11, a12, a21, a22, t):
    """Closed-form exp(A t) for a real, stable 2x2 matrix A.

    Written through the eigen-exponentials exp((mu +- q) t) so that nothing
    overflows for strongly damped blocks at long times; the near-defective
    case |q t| -> 0 falls back to the series of sinh(q t)/q.
    """
    mu = 0.5 * (a11 + a22)
    b11, b22 = a11 - mu, a22 - mu  # traceless part; B^2 = q^2 * I
    q = cmath.sqrt(complex(b11 * b11 + a12 * a21))
    if abs(q) * t < 1e-3:
        e = cmath.exp(mu * t)
        ch = e * cmath.cosh(q * t)
        sh_over_q = e * t * _sinch(q * t)
    else:
        ep = cmath.exp((mu + q) * t)
        em = cmath.exp((mu - q) * t)
        ch = 0.5 * (ep + em)
        sh_over_q = 0.5 * (ep - em) / q
    return (
        (ch + sh_over_q * b11).real, (sh_over_q * a12).real,
        (sh_over_q * a21).real, (ch + sh_over_q * b22).real,
    )


def driven_evolution(state0, rates, omega, phi_choice, t):
    """Closed-form state of the driven dot at time ``t``.

    <Sx> decays independently at gamma_x (or is locked when gamma_x = 0);
    the coupled (<Sy>, <Sz>) block is propagated with the exact 2x2 matrix
    exponential about its fixed point.  Agrees with the numerical
    propagation of the full master equation to integrator accuracy.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    triple = damping_triple(rates, phi_choice)
    sx = state0.sx * math.exp(-triple.gamma_x * t)

    gy, gz = triple.gamma_y, triple.gamma_z
    d = _drive_inhomogeneity(rates)
    denom = gy * gz + omega**2
    if denom == 0.0:
        # omega = 0 and gamma_y = 0: <Sy> is conserved, <Sz> decays alone.
        sy = state0.sy
        if gz == 0.0:
            sz = state0.sz
        else:
            sz_ss = -d / gz
            sz = sz_ss + (state0.sz - sz_ss) * math.exp(-gz * t)
        return BlochVector(sx, sy, sz)

    sy_ss = d * omega / denom
    sz_ss = -d * gy / denom
    e11, e12, e21, e22 = _expm2(-gy, -omega, omega, -gz, t)
    dy, dz = state0.sy - sy_ss, state0.sz - sz_ss
    sy = sy_ss + e11 * dy + e12 * dz
    sz = sz_ss + e21 * dy + e22 * dz
    return BlochVector(sx, sy, sz)


def dressed_populations(state):
    """Populations (rho_++, rho_--) of the resonant dressed states.

    |+-> = (|g> +- |e>)/sqrt(2); the populations depend on the coherence
    only: rho_+- = (1 +- 2<Sx>)/2.
    """
    return 0.5 * (1.0 + 2.0 * state.sx), 0.5 * (1.0 - 2.0 * state.sx)


def external_squeezed_decay(state0, n_photons, m_abs, gamma, t):
    """Free decay in an externally generated squeezed vacuum (phase Phi = 0).

    <Sy> decays at gamma*(1/2 + N - |M|), <Sx> at gamma*(1/2 + N + |M|), and
    <Sz> relaxes at gamma*(2N+1) to -1/(2*(2N+1)).  Requires the physical
    correlation range 0 <= |M| <= sqrt(N*(N+1)).
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if n_photons < 0 or gamma < 0:
        raise ValueError("n_photons and gamma must be >= 0")
    m_max = math.sqrt(n_photons * (n_photons + 1.0))
    if not 0.0 <= m_abs <= m_max * (1.0 + 1e-12) + 1e-15:
        raise ValueError(
            f"|M| = {m_abs} outside the physical range [0, sqrt(N(N+1))] "
            f"= [0, {m_max}]")
    g_slow = gamma * (0.5 + n_photons - m_abs)
    g_fast = gamma * (0.5 + n_photons + m_abs)
    sx = state0.sx * math.exp(-g_fast * t)
    sy = state0.sy * math.exp(-max(g_slow, 0.0) * t)
    rate_z = gamma * (2.0 * n_photons + 1.0)
    if rate_z == 0.0:
        sz = state0.sz
    else:
        sz_ss = -1.0 / (2.0 * (2.0 * n_photons + 1.0))
        sz = sz_ss + (state0.sz - sz_ss) * math.exp(-rate_z * t)
    return BlochVector(sx, sy, sz)
