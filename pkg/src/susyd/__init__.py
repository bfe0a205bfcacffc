"""Supersymmetric hard-core deuteron from the Hulthén potential."""
from .deuteron import PhysicalUnits, calibrate, calibrate_from_strength, energy_scale
from .errors import ConvergenceError, DomainError
from .hulthen import (
    BoundState,
    HulthenPotential,
    bound_state_count,
    eigenfunction,
    eigenvalue,
    potential_value,
    spectrum,
)
from .solver import RadialProblem, solve_bound_states, wavefunction_overlap
from .specfun import gamma_ratio, hyp2f1_terminating
from .susy import (
    PartnerPotential,
    Superpotential,
    apply_A,
    classify_susy,
    intertwining_residual,
    partner_potential,
    partner_state,
    riccati_residual,
    superpotential_from_strength,
)

__version__ = "0.1.0"
