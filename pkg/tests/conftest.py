import numpy as np
import pytest

from twoatom import geometry


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_density_matrix(rng, dim: int = 4) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_hermitian(rng, dim: int = 4) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def random_pair(rng, identical: bool = False) -> geometry.AtomPairConfig:
    separation = float(rng.uniform(0.03, 3.0))
    angle = float(rng.uniform(0.0, np.pi / 2))
    if identical:
        return geometry.AtomPairConfig(separation=separation,
                                       dipole_angle=angle)
    return geometry.AtomPairConfig(
        separation=separation, dipole_angle=angle,
        gamma2=float(rng.uniform(0.5, 2.0)), delta=float(rng.uniform(-2, 2)))


def random_drive(rng) -> geometry.DriveField:
    return geometry.DriveField(
        rabi=float(rng.uniform(0.0, 5.0)),
        detuning=float(rng.uniform(-5.0, 5.0)),
        propagation_angle=float(rng.uniform(0.0, np.pi)),
        wave_type="running" if rng.random() < 0.7 else "standing",
        phase=float(rng.uniform(0.0, 2 * np.pi)))
