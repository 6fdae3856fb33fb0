"""State validation shared by the evolution and observable layers."""
import numpy as np

from .errors import ValidationError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-8


def validate_density_matrix(rho: np.ndarray,
                            hermiticity_tol: float = HERMITICITY_TOL,
                            trace_tol: float = TRACE_TOL,
                            positivity_tol: float = POSITIVITY_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a 4x4 state.

    Returns the input as a complex array so callers can chain it.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValidationError(f"state must be 4x4, got {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > hermiticity_tol:
        raise ValidationError(f"state is not Hermitian: deviation {herm:.2e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValidationError(f"state trace is {tr:.12g}, expected 1")
    eigs = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if eigs.min() < -positivity_tol:
        raise ValidationError(
            f"state has negative eigenvalue {eigs.min():.2e}")
    return rho
