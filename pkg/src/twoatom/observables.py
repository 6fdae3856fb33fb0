"""Physical observables of the two-atom system.

Detected intensities are quoted in photons per unit gamma1 time with the
geometric prefactor normalized so the solid-angle integral of the angular
distribution returns the total emission rate.  Two-time correlations use
the quantum regression theorem: collapse, propagate with the generator,
collapse again.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import geometry
from .dynamics import Generator, evolve
from .errors import DomainError, UndefinedValueError, ValidationError
from .operators import (KET_A, S1M, S1P, S2M, S2P, SM, SP, expect)
from .validation import validate_density_matrix


@dataclass(frozen=True)
class DetectionGeometry:
    """Angles of the detection directions to the interatomic axis, plus
    the dipole-observation angle entering the sin^2 radiation pattern."""
    theta1: float
    theta2: float | None = None
    phi: float = math.pi / 2

    def __post_init__(self):
        for angle in (self.theta1, self.theta2, self.phi):
            if angle is not None and not 0 <= angle <= math.pi:
                raise ValidationError("detection angles must lie in [0, pi]")

    @property
    def second(self) -> float:
        return self.theta1 if self.theta2 is None else self.theta2


@dataclass(frozen=True)
class CorrelationSeries:
    """Delay grid and correlation (or variance) values on it."""
    taus: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.taus) <= 0):
            raise ValidationError("tau grid must be strictly increasing")

    def to_csv(self) -> str:
        lines = ["tau,value"]
        for t, v in zip(self.taus, self.values):
            lines.append(f"{t:.12g},{v:.12g}")
        return "\n".join(lines) + "\n"


def _damping_matrix(pair: geometry.AtomPairConfig) -> np.ndarray:
    g12 = geometry.collective_damping(pair)
    return np.array([[pair.gamma1, g12], [g12, pair.gamma2]])


def detection_operator(pair: geometry.AtomPairConfig, theta: float) -> np.ndarray:
    """Far-field collapse operator for a detector at angle theta.

    Atoms sit at -r12/2 and +r12/2, so each lowering operator carries the
    optical path phase of its emitter toward the detector.
    """
    phase = math.pi * pair.separation * math.cos(theta)
    return (math.sqrt(pair.gamma1) * np.exp(-1j * phase) * S1M
            + math.sqrt(pair.gamma2) * np.exp(+1j * phase) * S2M)


def total_intensity(rho: np.ndarray, pair: geometry.AtomPairConfig) -> float:
    """Total photon emission rate of the state."""
    rho = validate_density_matrix(rho)
    gm = _damping_matrix(pair)
    raising = [S1P, S2P]
    lowering = [S1M, S2M]
    out = 0.0
    for i in range(2):
        for j in range(2):
            out += gm[i, j] * expect(raising[i] @ lowering[j], rho).real
    return max(out, 0.0)


def intensity_along(rho: np.ndarray, pair: geometry.AtomPairConfig,
                    khat: np.ndarray, mu_hat: np.ndarray) -> float:
    """Radiated intensity per solid angle along an explicit direction.

    The prefactor 3/(8 pi) sin^2(phi) makes the full-sphere integral equal
    the total emission rate.
    """
    khat = np.asarray(khat, dtype=float)
    khat = khat / np.linalg.norm(khat)
    mu_hat = np.asarray(mu_hat, dtype=float)
    pattern = 1.0 - float(khat @ mu_hat) ** 2
    phase = 2 * math.pi * pair.separation * khat[0]  # interatomic axis is x
    gm = _damping_matrix(pair)
    amp = expect(S1P @ S1M, rho).real * gm[0, 0] \
        + expect(S2P @ S2M, rho).real * gm[1, 1] \
        + 2 * (math.sqrt(pair.gamma1 * pair.gamma2)
               * (expect(S1P @ S2M, rho) * np.exp(1j * phase)).real)
    return 3.0 / (8.0 * math.pi) * pattern * amp


def angular_intensity(rho: np.ndarray, pair: geometry.AtomPairConfig,
                      geom: DetectionGeometry) -> float:
    """Intensity per solid angle at detection angle theta1.

    Uses the sin^2 dipole pattern through geom.phi and the interference
    phase k0 r12 cos(theta1) between the two emission paths.
    """
    rho = validate_density_matrix(rho)
    pattern = math.sin(geom.phi) ** 2
    phase = 2 * math.pi * pair.separation * math.cos(geom.theta1)
    gm = _damping_matrix(pair)
    amp = expect(S1P @ S1M, rho).real * gm[0, 0] \
        + expect(S2P @ S2M, rho).real * gm[1, 1] \
        + 2 * (math.sqrt(pair.gamma1 * pair.gamma2)
               * (expect(S1P @ S2M, rho) * np.exp(1j * phase)).real)
    value = 3.0 / (8.0 * math.pi) * pattern * amp
    return max(value, 0.0) if abs(value) < 1e-14 else value


def g2_zero(rho: np.ndarray, pair: geometry.AtomPairConfig,
            geom: DetectionGeometry) -> float:
    """Equal-time normalized second-order correlation of the detectors."""
    rho = validate_density_matrix(rho)
    d1 = detection_operator(pair, geom.theta1)
    d2 = detection_operator(pair, geom.second)
    i1 = expect(d1.conj().T @ d1, rho).real
    i2 = expect(d2.conj().T @ d2, rho).real
    if i1 <= 0 or i2 <= 0:
        raise UndefinedValueError("dark detector placement: zero intensity")
    pair_op = d2 @ d1
    num = expect(pair_op.conj().T @ pair_op, rho).real
    return num / (i1 * i2)


def g2_tau(gen: Generator, rho_start: np.ndarray,
           pair: geometry.AtomPairConfig, geom: DetectionGeometry,
           taus: np.ndarray, normalize: bool = True,
           rtol: float = 1e-10, atol: float = 1e-13) -> CorrelationSeries:
    """Two-time intensity correlation by quantum regression.

    With a stationary rho_start this is g2(tau); with a transient state it
    is the correlation measured from that instant.  normalize=False
    returns the unnormalized two-time correlation (geometric constant set
    to one).
    """
    rho_start = validate_density_matrix(rho_start)
    taus = np.asarray(taus, dtype=float)
    d1 = detection_operator(pair, geom.theta1)
    d2 = detection_operator(pair, geom.second)
    collapsed = d1 @ rho_start @ d1.conj().T
    weight = float(np.trace(collapsed).real)
    if weight <= 0:
        raise UndefinedValueError("zero intensity at the first detector")
    series = evolve(gen, collapsed / weight, taus, rtol=rtol, atol=atol,
                    validate=False)
    meter = d2.conj().T @ d2
    raw = np.array([expect(meter, series.states[k]).real
                    for k in range(taus.size)])
    if not normalize:
        return CorrelationSeries(taus=taus, values=weight * raw)
    i2 = expect(meter, rho_start).real
    if i2 <= 0:
        raise UndefinedValueError("zero intensity at the second detector")
    return CorrelationSeries(taus=taus, values=raw / i2)


def mandel_q(g2_value: float, efficiency: float, window: float) -> float:
    """Photon-statistics parameter q*T*(g2 - 1) of a counting experiment."""
    if g2_value < 0:
        raise ValidationError("g2 must be nonnegative")
    if not 0 < efficiency <= 1:
        raise ValidationError("efficiency must lie in (0, 1]")
    if window <= 0:
        raise ValidationError("counting window must be positive")
    return efficiency * window * (g2_value - 1.0)


def quadrature_variance(rho: np.ndarray, pair: geometry.AtomPairConfig,
                        alpha: float, geom: DetectionGeometry) -> float:
    """Normally ordered quadrature variance of the fluorescence field,
    per atom, for observation perpendicular to the interatomic axis.

    The quadrature phase is referred to the detected field, which carries
    a 90-degree phase relative to the atomic lowering operator; alpha = 0
    is the component that exhibits the transient squeezing dip.
    """
    rho = validate_density_matrix(rho)
    if abs(geom.theta1 - math.pi / 2) > 1e-9:
        raise DomainError(
            "quadrature variances require observation perpendicular to the "
            "interatomic axis")
    phase = np.exp(1j * (alpha + math.pi / 2))
    sm_mean = expect(SM, rho)
    smsm = expect(SM @ SM, rho)
    spsm = expect(SP @ SM, rho)
    linear = 2.0 * (sm_mean * phase).real
    bracket = spsm.real + (smsm * phase ** 2).real - 0.5 * linear ** 2
    return 0.25 * bracket


def visibility(rho: np.ndarray) -> float:
    """First-order fringe contrast; negative for a dark-centered pattern."""
    rho = validate_density_matrix(rho)
    num = 2.0 * expect(S1P @ S2M, rho).real
    den = expect(S1P @ S1M, rho).real + expect(S2P @ S2M, rho).real
    if den <= 1e-14:
        raise UndefinedValueError("visibility undefined for a dark state")
    return num / den


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2)."""
    rho = validate_density_matrix(rho)
    return float(np.trace(rho @ rho).real)


def total_spin_squared(rho: np.ndarray) -> float:
    """S^2 expectation, 2 - 2 * (antisymmetric-state population)."""
    rho = validate_density_matrix(rho)
    p_anti = float((KET_A.conj() @ rho @ KET_A).real)
    return 2.0 - 2.0 * p_anti


def field_variance_mapping(res: geometry.SqueezedReservoir,
                           rho_ss: np.ndarray) -> tuple[float, float]:
    """(incident, emitted) squeezed quadrature variances, in units of the
    field constant, both evaluated at the squeezed quadrature phase.

    The emitted variance is read off the stationary collective-state
    populations and the two-photon coherence.
    """
    rho_ss = validate_density_matrix(rho_ss)
    n_eff, m_eff = geometry.effective_squeezing(res)
    incident = 2.0 * (n_eff - m_eff)
    from .basis import basis_transform
    rc = basis_transform("to_collective", rho_ss)
    rho_u = (rc[3, 0] * np.exp(-1j * res.squeeze_phase)
             + rc[0, 3] * np.exp(1j * res.squeeze_phase)).real
    emitted = 2.0 * rc[1, 1].real + 2.0 * rc[3, 3].real - abs(rho_u)
    return incident, emitted
