"""Generators of the two-atom master equations and their solvers.

Every builder returns a 16x16 superoperator acting on column-stacked
density matrices in the product basis, expressed in a rotating frame that
makes the generator time independent (laser frame for driven scenarios,
squeezing carrier frame for squeezed ones, each atom's own frame for the
secular nonidentical squeezed case).
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import geometry
from .errors import DomainError, IntegrationError, SteadyStateError, ValidationError
from .operators import (I4, S1M, S1P, S1Z, S2M, S2P, S2Z, SM, SP, SZ,
                        dissipator, hamiltonian_superop, spre_spost, unvec, vec)
from .validation import validate_density_matrix

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12
NULLSPACE_RTOL = 1e-8


@dataclass(frozen=True)
class Generator:
    """Time-independent generator of a master equation, rho_dot = L rho."""
    matrix: np.ndarray
    scenario: str
    meta: dict = field(default_factory=dict)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return unvec(self.matrix @ vec(rho))


@dataclass(frozen=True)
class EvolutionSeries:
    """Time grid (units of 1/gamma1) and the states reached on it."""
    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise ValidationError("time grid must be strictly increasing")

    def state_at(self, index: int) -> np.ndarray:
        return self.states[index]


def _damping_matrix(pair: geometry.AtomPairConfig) -> np.ndarray:
    g12 = geometry.collective_damping(pair)
    return np.array([[pair.gamma1, g12], [g12, pair.gamma2]])


def _pair_shift(pair: geometry.AtomPairConfig) -> float:
    # the Dicke idealization drops the quasistatic shift along with the
    # spatial phases; at finite separation the full expression is used
    if pair.separation == 0:
        return 0.0
    return geometry.dipole_dipole_shift(pair)


def _vacuum_dissipator(pair: geometry.AtomPairConfig) -> np.ndarray:
    gm = _damping_matrix(pair)
    lowering = [S1M, S2M]
    l = np.zeros((16, 16), dtype=complex)
    for i in range(2):
        for j in range(2):
            l += dissipator(gm[i, j], lowering[i], lowering[j])
    return l


def build_vacuum_drive(pair: geometry.AtomPairConfig,
                       drive: geometry.DriveField) -> Generator:
    """Laser-driven pair coupled to the ordinary vacuum, in the frame
    rotating at the laser frequency."""
    om1, om2 = geometry.rabi_at_atoms(drive, pair)
    omega12 = _pair_shift(pair)
    h = (-drive.detuning * (S1Z + S2Z)
         + pair.delta * (S2Z - S1Z)
         + omega12 * (S1P @ S2M + S2P @ S1M)
         - 0.5 * (om1 * S1P + np.conj(om1) * S1M
                  + om2 * S2P + np.conj(om2) * S2M))
    l = hamiltonian_superop(h) + _vacuum_dissipator(pair)
    return Generator(matrix=l, scenario="vacuum_drive",
                     meta={"pair": pair, "drive": drive,
                           "gamma12": _damping_matrix(pair)[0, 1],
                           "omega12": omega12})


def _two_photon_term(rate: float, m_eff: complex,
                     op_i: np.ndarray, op_j: np.ndarray) -> np.ndarray:
    # +rate/2 * M (rho Si+Sj+ + Si+Sj+ rho - 2 Sj+ rho Si+) + h.c. block
    raise_i, raise_j = op_i.conj().T, op_j.conj().T
    a = raise_i @ raise_j
    term = 0.5 * rate * m_eff * (spre_spost(I4, a) + spre_spost(a, I4)
                                 - 2.0 * spre_spost(raise_j, raise_i))
    b = op_i @ op_j
    term += 0.5 * rate * np.conj(m_eff) * (spre_spost(I4, b) + spre_spost(b, I4)
                                           - 2.0 * spre_spost(op_j, op_i))
    return term


def build_squeezed(pair: geometry.AtomPairConfig,
                   res: geometry.SqueezedReservoir) -> Generator:
    """Pair coupled to a broadband squeezed vacuum.

    Identical atoms keep the complete generator in the frame rotating at
    the squeezing carrier.  Nonidentical atoms (delta != 0) are treated in
    the secular regime |delta| >> gamma with the carrier tuned midway
    between the transition frequencies: single-atom two-photon terms and
    cross damping average out and only the collective two-photon channel
    survives.  The secular condition is recorded in the metadata, not
    enforced.
    """
    n_eff, m_eff_mag = geometry.effective_squeezing(res)
    if geometry.classify_squeezing(n_eff, m_eff_mag) == "invalid":
        raise ValidationError("reservoir violates the two-photon bound")
    m_eff = m_eff_mag * np.exp(1j * res.squeeze_phase)
    gm = _damping_matrix(pair)
    lowering = [S1M, S2M]
    secular = pair.delta != 0.0
    if secular and res.carrier_offset != 0.0:
        raise ValidationError(
            "the secular nonidentical case requires the squeezing carrier "
            "midway between the transition frequencies (carrier_offset = 0)")
    l = np.zeros((16, 16), dtype=complex)
    for i in range(2):
        for j in range(2):
            cross = i != j
            if not secular or not cross:
                l += dissipator(gm[i, j] * (n_eff + 1.0), lowering[i], lowering[j])
                l += dissipator(gm[i, j] * n_eff, lowering[i].conj().T,
                                lowering[j].conj().T)
            if not secular or cross:
                l += _two_photon_term(gm[i, j], m_eff, lowering[i], lowering[j])
    if not secular:
        h = -res.carrier_offset * (S1Z + S2Z)
        if pair.separation > 0:
            h = h + _pair_shift(pair) * (S1P @ S2M + S2P @ S1M)
        l += hamiltonian_superop(h)
    return Generator(matrix=l, scenario="squeezed",
                     meta={"pair": pair, "reservoir": res,
                           "n_eff": n_eff, "m_eff": m_eff,
                           "secular": secular,
                           "secular_condition": "|delta| >> gamma" if secular else None})


def _dressed_rotation() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rz = 0.5 * (SP + SM)
    rp = 1j * (SZ - 0.5 * (SP - SM))
    rm = -1j * (SZ + 0.5 * (SP - SM))
    return rz, rp, rm


def build_dicke_dressed(drive: geometry.DriveField) -> Generator:
    """Secular strong-drive generator of the resonantly driven Dicke pair.

    Valid for rabi >> gamma; the condition is recorded as metadata only.
    The antisymmetric state is annihilated by every term, so it rides
    along as a dark, conserved sector of the embedding 4-level space.
    """
    rz, rp, rm = _dressed_rotation()
    l = hamiltonian_superop(-drive.rabi * rz)
    l += dissipator(1.0, rz)
    l += dissipator(0.25, rm)
    l += dissipator(0.25, rp)
    return Generator(matrix=l, scenario="dicke_dressed",
                     meta={"drive": drive,
                           "validity": "rabi >> gamma (not enforced)"})


def build_bad_cavity(pair: geometry.AtomPairConfig, g: float,
                     gamma_c: float, omega_drive: float) -> Generator:
    """Distant atoms coupled through an overdamped cavity mode.

    After adiabatic elimination the cavity leaves an effective resonant
    drive g*omega_drive/gamma_c and a collective decay channel at
    g^2/gamma_c on top of ordinary single-atom emission.
    """
    if gamma_c <= 0:
        raise DomainError("cavity decay rate must be positive")
    eta = omega_drive / gamma_c
    h = -0.5 * g * eta * (SP + SM)
    l = hamiltonian_superop(h)
    l += dissipator(pair.gamma1, S1M)
    l += dissipator(pair.gamma2, S2M)
    l += dissipator(g ** 2 / gamma_c, SM)
    return Generator(matrix=l, scenario="bad_cavity",
                     meta={"pair": pair, "g": g, "gamma_c": gamma_c,
                           "omega_drive": omega_drive,
                           "effective_rabi": g * eta,
                           "collective_rate": g ** 2 / gamma_c,
                           "validity": "gamma_c >> g >> gamma (not enforced)"})


def evolve(gen: Generator, rho0: np.ndarray, grid: np.ndarray,
           rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
           validate: bool = True) -> EvolutionSeries:
    """Integrate rho_dot = L rho on the given strictly increasing grid.

    Uses an adaptive 8th-order Runge-Kutta scheme with dense output; the
    returned states are re-validated unless validate is False.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1 or np.any(np.diff(grid) <= 0):
        raise ValidationError("grid must be one-dimensional and increasing")
    if grid[0] < 0:
        raise ValidationError("grid times must be nonnegative")
    rho0 = validate_density_matrix(rho0)
    lmat = gen.matrix
    t0 = 0.0
    sol = solve_ivp(lambda _t, y: lmat @ y, (t0, grid[-1]), vec(rho0),
                    t_eval=grid, method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        reached = sol.t[-1] if sol.t.size else t0
        raise IntegrationError(f"integration failed: {sol.message}",
                               last_time=reached)
    states = np.empty((grid.size, 4, 4), dtype=complex)
    for k in range(grid.size):
        rho = unvec(sol.y[:, k])
        rho = 0.5 * (rho + rho.conj().T)
        if validate:
            validate_density_matrix(rho, hermiticity_tol=1e-8,
                                    trace_tol=1e-7, positivity_tol=1e-6)
        states[k] = rho
    return EvolutionSeries(times=grid, states=states)


def _nullspace(lmat: np.ndarray, rtol: float) -> tuple[np.ndarray, np.ndarray]:
    _, svals, vh = np.linalg.svd(lmat)
    scale = svals[0] if svals[0] > 0 else 1.0
    mask = svals / scale < rtol
    return svals, vh.conj()[mask].T


def steady_state(gen: Generator, rtol: float = NULLSPACE_RTOL,
                 reference: np.ndarray | None = None) -> tuple[np.ndarray, bool]:
    """Solve L rho = 0 with unit trace.

    A one-dimensional null space gives the unique stationary state.  When
    the kernel is degenerate (the Dicke pair conserves the total spin) the
    flag is set and the state returned is the infinite-time limit reached
    from the ground state, or from the supplied reference state, computed
    by spectral projection onto the kernel.
    """
    lmat = gen.matrix
    svals, null_basis = _nullspace(lmat, rtol)
    if null_basis.shape[1] == 0:
        raise SteadyStateError(
            f"no null vector found; smallest singular ratio "
            f"{svals[-1] / svals[0]:.2e}")
    if null_basis.shape[1] == 1:
        rho = unvec(null_basis[:, 0])
        tr = np.trace(rho)
        if abs(tr) < 1e-12:
            raise SteadyStateError("null vector is traceless")
        rho = rho / tr
        rho = 0.5 * (rho + rho.conj().T)
        return rho, False
    # degenerate kernel: project the reference initial state onto it
    if reference is None:
        reference = np.zeros((4, 4), dtype=complex)
        reference[0, 0] = 1.0
    _, left_basis = _nullspace(lmat.conj().T, rtol)
    overlap = left_basis.conj().T @ null_basis
    weights = np.linalg.solve(overlap, left_basis.conj().T @ vec(reference))
    rho = unvec(null_basis @ weights)
    tr = np.trace(rho)
    if abs(tr) < 1e-12:
        raise SteadyStateError("projected steady state is traceless")
    rho = rho / tr
    rho = 0.5 * (rho + rho.conj().T)
    residual = np.abs(lmat @ vec(rho)).max()
    if residual > 1e-8:
        raise SteadyStateError(f"projected state is not stationary "
                               f"(residual {residual:.2e})")
    return rho, True
