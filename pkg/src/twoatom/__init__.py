"""Collective dynamics of two two-level atoms coupled through vacuum,
squeezed-vacuum and bad-cavity reservoirs."""

from .geometry import (AtomPairConfig, DriveField, SqueezedReservoir,
                       classify_squeezing, collective_damping,
                       dipole_dipole_shift, effective_squeezing,
                       rabi_at_atoms)
from .basis import (CollectiveBasis, SuperpositionCoeffs, basis_transform,
                    build_basis, coherent_couplings, collective_populations,
                    superposition_rates)
from .dynamics import (EvolutionSeries, Generator, build_bad_cavity,
                       build_dicke_dressed, build_squeezed,
                       build_vacuum_drive, evolve, steady_state)
from .jumps import (ConditionalHamiltonian, JumpEnsemble, TrajectoryRecord,
                    conditional_hamiltonian, export_records,
                    no_jump_probability, reset_state, run_trajectories,
                    waiting_time_density)
from .observables import (CorrelationSeries, DetectionGeometry,
                          angular_intensity, field_variance_mapping, g2_tau,
                          g2_zero, mandel_q, purity, quadrature_variance,
                          total_intensity, total_spin_squared, visibility)
from .validation import validate_density_matrix

__version__ = "0.1.0"
