"""Vibrational modes of symmetric planar particle rings.

Computes the dihedrally symmetric equilibrium of n particles coupled by a
bond potential and a long-range pair potential, the isotypical block
decomposition of the Hessian, the critical frequencies of the linearized
periodic problem, equivariant-degree bifurcation invariants in the Burnside
ring of D_n x O(2), and validates predictions by symplectic integration
with periodic-orbit shooting.
"""

from .errors import (
    ConsistencyError,
    DomainError,
    EquivibeError,
    SolverError,
    UnsupportedError,
)
from .model import (
    Configuration,
    Equilibrium,
    PotentialParams,
    find_equilibrium,
    gradient,
    hessian,
    potential_energy,
)
from .spectrum import (
    CoefficientTable,
    CriticalValue,
    SpectralReport,
    critical_set,
    eigenvalues_with_multiplicity,
    isotypical_blocks,
    report_from_labeled_eigenvalues,
)
from .burnside import BurnsideElement
from .degrees import (
    IrreducibleLabel,
    OmegaInvariant,
    basic_degree,
    linear_gradient_degree,
    omega_invariant,
    twisted_basic_degree,
)
from .dynamics import (
    OrbitResult,
    Trajectory,
    find_periodic_orbit,
    integrate,
    symmetry_deviation,
)

__version__ = "0.1.0"

__all__ = [
    "BurnsideElement",
    "CoefficientTable",
    "Configuration",
    "ConsistencyError",
    "CriticalValue",
    "DomainError",
    "Equilibrium",
    "EquivibeError",
    "IrreducibleLabel",
    "OmegaInvariant",
    "OrbitResult",
    "PotentialParams",
    "SolverError",
    "SpectralReport",
    "Trajectory",
    "UnsupportedError",
    "basic_degree",
    "critical_set",
    "eigenvalues_with_multiplicity",
    "find_equilibrium",
    "find_periodic_orbit",
    "gradient",
    "hessian",
    "integrate",
    "isotypical_blocks",
    "linear_gradient_degree",
    "omega_invariant",
    "potential_energy",
    "report_from_labeled_eigenvalues",
    "symmetry_deviation",
    "twisted_basic_degree",
]
