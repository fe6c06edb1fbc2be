"""Analytic rotating-wave solution of the Law effective Hamiltonian for the
cavity dynamical Casimir effect, with an RK4 Fock-space oracle."""

from .errors import (
    BadDimension,
    CasimirError,
    DegenerateDecomposition,
    DimensionMismatch,
    NormDrift,
    OverflowRisk,
    SingularAlpha,
)
from .integrator import IntegrationConfig, Trajectory, integrate
from .kernels import BACKEND
from .model import (
    HamiltonianKind,
    ModelParams,
    SolutionFactors,
    evolve_analytic,
    mean_photons_closed_form,
    solution_factors,
    vacuum_solution_closed_form,
)
from .observables import infidelity, mean_photon_number, photon_distribution

__version__ = "0.1.0"
