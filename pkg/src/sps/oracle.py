"""Brute-force ground truth for the two-level dot.

Builds the full 4x4 Liouvillian superoperator, propagates the vectorized
density matrix with a fixed-step classical RK4 scheme (Richardson
step-halving verification), evaluates two-time dipole correlations through
the quantum regression theorem, and transforms them into a spectrum by
direct quadrature.  Nothing here reuses the closed forms of
:mod:`sps.bloch` or :mod:`sps.spectrum`: this module is the independent
check they are tested against.

Vectorization convention (fixed everywhere): the density matrix in the
{|e>, |g>} basis is flattened row-major, vec(rho) = (rho_ee, rho_eg,
rho_ge, rho_gg), so the superoperator of rho -> A rho B is kron(A, B.T).
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .bloch import BlochVector
from .reservoir import REGIME_ORDINARY, map_to_squeezing
from .spectrum import SpectrumResult

# Dot operators in the {|e>, |g>} basis.
SP = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)   # S+ = |e><g|
SM = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)   # S- = |g><e|
SX = 0.5 * (SP + SM)
SY = 0.5j * (SM - SP)
SZ = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
I2 = np.eye(2, dtype=complex)

DEFAULT_TAU_POINTS = 4096
DEFAULT_OMEGA_POINTS = 2048

_KERNEL_TOL = 1e-10


class DegenerateSteadyStateError(ValueError):
    """The Liouvillian kernel is more than one-dimensional."""


class PropagationError(RuntimeError):
    """Numerical propagation failed (step underflow or broken invariants)."""


def vectorize(rho):
    """Flatten a 2x2 operator to the fixed (ee, eg, ge, gg) order."""
    return np.asarray(rho, dtype=complex).reshape(4)


def unvectorize(vec):
    return np.asarray(vec, dtype=complex).reshape(2, 2)


def sandwich(a, b):
    """Superoperator of rho -> a @ rho @ b."""
    return np.kron(a, b.T)


def dissipator(c):
    """Lindblad dissipator D[c] = c rho c+ - 1/2 {c+ c, rho} as a 4x4 matrix."""
    cdc = c.conj().T @ c
    return (sandwich(c, c.conj().T)
            - 0.5 * sandwich(cdc, I2) - 0.5 * sandwich(I2, cdc))


def hamiltonian_superop(h):
    """Superoperator of the coherent part rho -> -i [h, rho]."""
    return -1j * (sandwich(h, I2) - sandwich(I2, h))


def expect(op, rho):
    """Expectation value tr(rho @ op)."""
    return complex(np.trace(rho @ op))


def bloch_to_rho(state):
    """Density matrix of a Bloch vector: rho = I/2 + 2(sx Sx + sy Sy + sz Sz)."""
    return np.array([[0.5 + state.sz, state.sx - 1j * state.sy],
                     [state.sx + 1j * state.sy, 0.5 - state.sz]], dtype=complex)


def rho_to_bloch(rho):
    return BlochVector(float(rho[0, 1].real), float(-rho[0, 1].imag),
                       float(0.5 * (rho[0, 0] - rho[1, 1]).real))


def assert_density_matrix(rho, tol=1e-10):
    """Raise unless rho is Hermitian, unit-trace and positive to ``tol``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"density matrix trace {np.trace(rho)!r} != 1")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -tol:
        raise ValueError("density matrix has a negative eigenvalue")


def reservoir_liouvillian(rates, phi=None):
    """Engineered-reservoir part of the master equation.

    2*gamma_s D[S-] + 2*gamma_n D[S+]
    - 2*gamma_m (e^{2i phi} S+ . S+ + e^{-2i phi} S- . S-)
    """
    phi = rates.phi if phi is None else phi
    lv = 2.0 * rates.gamma_s * dissipator(SM) + 2.0 * rates.gamma_n * dissipator(SP)
    lv -= 2.0 * rates.gamma_m * (np.exp(2j * phi) * sandwich(SP, SP)
                                 + np.exp(-2j * phi) * sandwich(SM, SM))
    return lv


def build_liouvillian(rates, gamma_rad=None, omega=0.0, phi=None,
                      laser_on=False, laser_phase=0.0):
    """Full Liouvillian: reservoir + radiative decay + optional resonant drive.

    The radiative part is Gamma*D[S-]; the drive enters as
    -i[V, .] with V = (Omega/2)(S+ e^{-i phi_L} + S- e^{i phi_L}), which at
    phi_L = 0 reproduces d<Sy>/dt = -Omega <Sz>, d<Sz>/dt = +Omega <Sy>.
    ``gamma_rad`` and ``phi`` default to the values carried by ``rates``.
    """
    gamma_rad = rates.gamma_rad if gamma_rad is None else gamma_rad
    lv = reservoir_liouvillian(rates, phi=phi)
    if gamma_rad > 0.0:
        lv = lv + gamma_rad * dissipator(SM)
    if laser_on and omega != 0.0:
        v = 0.5 * omega * (np.exp(-1j * laser_phase) * SP
                           + np.exp(1j * laser_phase) * SM)
        lv = lv + hamiltonian_superop(v)
    return lv


def build_liouvillian_decomposed(rates):
    """Reservoir Liouvillian as maximally-squeezed jump + thermal background.

    gamma*(D[Y] + Nb*D[S-] + Nb*D[S+]) with the squeezed jump operator
    Y = sqrt(Ns+1) S- e^{-i phi} - sqrt(Ns) S+ e^{i phi}.  Valid in the
    ordinary regime (gamma_2 > gamma_1) only; equals
    ``reservoir_liouvillian`` as a matrix.
    """
    desc = map_to_squeezing(rates)
    if desc.regime != REGIME_ORDINARY:
        raise ValueError(
            f"decomposition requires the ordinary regime (gamma2 > gamma1), "
            f"got {desc.regime}")
    phi = rates.phi
    jump = (math.sqrt(desc.n_squeezed + 1.0) * np.exp(-1j * phi) * SM
            - math.sqrt(desc.n_squeezed) * np.exp(1j * phi) * SP)
    return desc.gamma_eff * (dissipator(jump)
                             + desc.n_background * dissipator(SM)
                             + desc.n_background * dissipator(SP))


def build_qnd_liouvillian(gamma0, nbar, phi):
    """Quadrature-coupling (QND) form of the perfect-regime reservoir.

    4*(2*nbar+1)*gamma0 * (2 S_phi . S_phi - S_phi^2 . - . S_phi^2) with
    S_phi = Sx sin(phi) + Sy cos(phi).  Equals ``reservoir_liouvillian`` for
    gamma_1 = gamma_2 = gamma0 as a matrix; only S_phi couples to the bath,
    so <S_phi> is conserved.
    """
    s_phi = SX * math.sin(phi) + SY * math.cos(phi)
    s_phi2 = s_phi @ s_phi
    rate = 4.0 * (2.0 * nbar + 1.0) * gamma0
    return rate * (2.0 * sandwich(s_phi, s_phi)
                   - sandwich(s_phi2, I2) - sandwich(I2, s_phi2))


def steady_state(liouvillian, tol=_KERNEL_TOL):
    """Unique null state of the Liouvillian via SVD.

    Raises :class:`DegenerateSteadyStateError` when the kernel is
    degenerate (e.g. coherence locking), in which case the stationary state
    depends on the initial condition; use :func:`asymptotic_state`.
    """
    _, sv, vh = np.linalg.svd(liouvillian)
    scale = max(sv[0], 1.0)
    if sv[3] > tol * scale:
        raise ValueError("Liouvillian has no null vector (not trace-preserving?)")
    if sv[2] <= tol * scale:
        raise DegenerateSteadyStateError(
            f"steady-state manifold is degenerate: singular values {sv!r}")
    rho = unvectorize(vh[3].conj())
    rho = rho / np.trace(rho)
    return 0.5 * (rho + rho.conj().T)


def asymptotic_state(liouvillian, rho0, tol=_KERNEL_TOL):
    """t -> infinity limit of exp(L t) rho0 via the kernel spectral projector.

    Works for degenerate kernels (the projection of rho0 onto the null
    space); the result is stationary by construction.
    """
    evals, evecs = np.linalg.eig(liouvillian)
    scale = max(np.abs(evals).max(), 1.0)
    zero = np.abs(evals) <= tol * scale
    if not np.any(zero):
        raise ValueError("Liouvillian has no stationary modes")
    coeff = np.linalg.solve(evecs, vectorize(rho0))
    vec_inf = evecs[:, zero] @ coeff[zero]
    rho = unvectorize(vec_inf)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    residual = np.abs(liouvillian @ vectorize(rho)).max()
    if residual > 1e-8 * scale:
        raise PropagationError(
            f"asymptotic state is not stationary: |L rho| = {residual!r}")
    return rho


def stationary_state(liouvillian, rho0=None, tol=_KERNEL_TOL):
    """Steady state, falling back to the rho0-dependent limit when degenerate."""
    try:
        return steady_state(liouvillian, tol=tol)
    except DegenerateSteadyStateError:
        if rho0 is None:
            raise
        return asymptotic_state(liouvillian, rho0, tol=tol)


def _rk4_run(y0, liouvillian, t_grid, h_target):
    """Fixed-step classical RK4 over ``t_grid`` with substep size <= h_target."""
    lv = liouvillian
    y = y0.astype(complex)
    out = np.empty((len(t_grid), 4), dtype=complex)
    out[0] = y
    for k in range(len(t_grid) - 1):
        dt = t_grid[k + 1] - t_grid[k]
        if dt == 0.0:
            out[k + 1] = y
            continue
        n_sub = max(1, math.ceil(dt / h_target)) if math.isfinite(h_target) else 1
        h = dt / n_sub
        for _ in range(n_sub):
            k1 = lv @ y
            k2 = lv @ (y + 0.5 * h * k1)
            k3 = lv @ (y + 0.5 * h * k2)
            k4 = lv @ (y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = y
    return out


def _propagate_vec(y0, liouvillian, t_grid, rtol, max_halvings=16):
    """RK4 with Richardson verification: halve the step until the full
    trajectory changes by less than ``rtol`` (sup norm)."""
    t_grid = np.asarray(t_grid, dtype=float)
    if len(t_grid) < 1 or np.any(np.diff(t_grid) < 0):
        raise ValueError("t_grid must be non-decreasing")
    norm = np.linalg.norm(liouvillian, 2)
    h = 0.5 / norm if norm > 0 else math.inf
    traj = _rk4_run(y0, liouvillian, t_grid, h)
    for _ in range(max_halvings):
        h *= 0.5
        finer = _rk4_run(y0, liouvillian, t_grid, h)
        if np.abs(finer - traj).max() < rtol:
            return finer
        traj = finer
    raise PropagationError(
        f"step halving did not converge to rtol={rtol!r} within "
        f"{max_halvings} halvings (step underflow)")


def propagate(rho0, liouvillian, t_grid, rtol=1e-10):
    """Propagate a density matrix along ``t_grid``; returns (len(t), 2, 2).

    Classical fixed-step RK4 whose step is halved until the whole
    trajectory is reproduced to ``rtol``; trace and Hermiticity are checked
    to 1e-10 at every sample.
    """
    assert_density_matrix(rho0)
    traj = _propagate_vec(vectorize(rho0), liouvillian, t_grid, rtol)
    rhos = traj.reshape(-1, 2, 2)
    traces = np.abs(np.trace(rhos, axis1=1, axis2=2) - 1.0)
    herm = np.abs(rhos - np.conj(np.swapaxes(rhos, 1, 2))).max()
    if traces.max() > 1e-10 or herm > 1e-10:
        raise PropagationError(
            f"propagation broke invariants: max trace error {traces.max()!r}, "
            f"max Hermiticity error {herm!r}")
    return rhos


def two_time_correlation(liouvillian, rho_ss, tau_grid, rtol=1e-10):
    """Fluctuation correlation <dS+(t) dS-(t+tau)>_ss on ``tau_grid``.

    Quantum regression theorem: propagate X(tau) from
    X(0) = rho_ss S+ - <S+>_ss rho_ss under the Liouvillian and read out
    tr(S- X(tau)).  ``rho_ss`` must be stationary (residual |L rho| below
    1e-10 relative to the Liouvillian scale).
    """
    rho_ss = np.asarray(rho_ss, dtype=complex)
    scale = max(np.abs(liouvillian).max(), 1.0)
    residual = np.abs(liouvillian @ vectorize(rho_ss)).max()
    if residual > 1e-10 * scale:
        raise ValueError(
            f"rho_ss is not stationary: |L rho| = {residual!r} "
            f"(tolerance {1e-10 * scale!r})")
    sp_avg = expect(SP, rho_ss)
    x0 = rho_ss @ SP - sp_avg * rho_ss
    traj = _propagate_vec(vectorize(x0), liouvillian, tau_grid, rtol)
    # tr(S- X) is the (e,g) element of X in the fixed vectorization order.
    return traj[:, 1].copy()


def default_tau_grid(rate_scales, points=DEFAULT_TAU_POINTS):
    """Grid [0, 20/min(nonzero rate)] resolving the slowest decay."""
    nonzero = [r for r in rate_scales if r > 1e-12]
    if not nonzero:
        raise ValueError("no nonzero rate to set the correlation time window")
    return np.linspace(0.0, 20.0 / min(nonzero), points)


def default_wide_omega_grid(omega, gamma_bar, points=DEFAULT_OMEGA_POINTS):
    """Grid [-(2*Omega+10*gamma_bar), +(2*Omega+10*gamma_bar)]."""
    span = 2.0 * omega + 10.0 * gamma_bar
    return np.linspace(-span, span, points)


def numeric_spectrum(tau_grid, corr, omega_grid, coherent_weight=0.0,
                     params=None, decay_rtol=1e-8):
    """Incoherent spectrum 2*Re integral_0^inf e^{i delta tau} C(tau) dtau.

    Trapezoid quadrature over the sampled correlation.  A non-decaying tail
    (coherence locking) is estimated from the last 5% of samples, split off
    as ``zero_width_weight``, and subtracted before transforming; if the
    remainder has not decayed below ``decay_rtol`` * |C(0)| at tau_max a
    truncation warning carrying the residual bound is emitted.
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    corr = np.asarray(corr, dtype=complex)
    omega_grid = np.asarray(omega_grid, dtype=float)
    if tau_grid.shape != corr.shape:
        raise ValueError("tau_grid and correlation series have different shapes")

    scale = max(abs(corr[0]), 1e-300)
    tail = corr[-max(1, len(corr) // 20):].mean()
    zero_width = 0.0
    if abs(tail) > decay_rtol * scale:
        if abs(tail.imag) > 1e-6 * scale:
            warnings.warn(
                f"non-decaying correlation tail has imaginary part {tail.imag!r}; "
                f"zero-width weight keeps the real part only", stacklevel=2)
        zero_width = tail.real
        corr = corr - tail
    residual = abs(corr[-1])
    if residual > decay_rtol * max(abs(corr[0]), 1e-300):
        bound = residual * (tau_grid[-1] - tau_grid[0])
        warnings.warn(
            f"correlation not decayed at tau_max: |C(tau_max)| = {residual!r} "
            f"(> {decay_rtol} * |C(0)|); spectrum truncation error bound "
            f"~ {bound!r}", stacklevel=2)

    weights = np.zeros_like(tau_grid)
    dtau = np.diff(tau_grid)
    weights[:-1] += 0.5 * dtau
    weights[1:] += 0.5 * dtau
    weighted = weights * corr

    s_in = np.empty_like(omega_grid)
    chunk = 256
    for start in range(0, len(omega_grid), chunk):
        block = omega_grid[start:start + chunk, None]
        kernel = np.exp(1j * block * tau_grid[None, :])
        s_in[start:start + chunk] = 2.0 * np.real(kernel @ weighted)

    return SpectrumResult(
        coherent_weight=coherent_weight,
        omega_grid=omega_grid,
        incoherent=s_in,
        zero_width_weight=zero_width,
        engine="numeric",
        params=params or {})


def regression_spectrum(rates, omega, sx0=0.0, sy0=0.0, sz0=0.0,
                        omega_grid=None, tau_points=DEFAULT_TAU_POINTS,
                        rtol=1e-10):
    """End-to-end numeric spectrum of the driven dot.

    Builds the full Liouvillian (squeezing phase taken from ``rates``),
    finds the stationary state (the asymptotic state from the initial Bloch
    vector when the kernel is degenerate), evaluates the regression-theorem
    correlation on the default tau grid, and transforms it on
    ``omega_grid``.
    """
    lv = build_liouvillian(rates, omega=omega, laser_on=True)
    rho0 = bloch_to_rho(BlochVector(sx0, sy0, sz0))
    rho_ss = stationary_state(lv, rho0=rho0)

    # Decay scales of the driven system set the correlation window.
    base = rates.gamma_s + rates.gamma_n + 0.5 * rates.gamma_rad
    candidates = [base - 2.0 * rates.gamma_m,
                  base + 2.0 * rates.gamma_m,
                  2.0 * (rates.gamma_s + rates.gamma_n) + rates.gamma_rad]
    tau_grid = default_tau_grid(candidates, points=tau_points)
    corr = two_time_correlation(lv, rho_ss, tau_grid, rtol=rtol)

    if omega_grid is None:
        omega_grid = default_wide_omega_grid(omega, max(candidates))
    sp_avg = expect(SP, rho_ss)
    return numeric_spectrum(
        tau_grid, corr, omega_grid,
        coherent_weight=float(abs(sp_avg) ** 2),
        params={"omega": omega, "phi": rates.phi, "sx0": sx0,
                "tau_max": float(tau_grid[-1])})
