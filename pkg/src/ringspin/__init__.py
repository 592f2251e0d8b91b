"""Spin transport on rings: invariant cones, geometric phases, motive forces.

The package is organized bottom-up:

``pauli``      spinor primitives and exact 2x2 exponentials
``fields``     unit systems, ring scenarios, drive protocols
``invariant``  closed-form cones, eigenspinors, analytic phase budgets
``propagate``  exact-unitary transport and the phase decomposition
``classical``  precession, effective potentials, flux ledgers, emfs
``config``     TOML run/sweep configs with exhaustive validation
``cli``        the ``ringspin`` command (run / sweep / check)
"""

from .pauli import (HermitianObservable, IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z,
                    bloch, exp_unitary, expectation, normalize, overlap)
from .fields import (ACRingScenario, CombinedScenario, DriveProtocol,
                     SternScenario, UnitSystem, b0_stern, b_phi, cone_axis,
                     electric_field_vector, evaluate_drive,
                     magnetic_field_vector, orbital_energy, with_drive_value)
from .invariant import (AnalyticPhases, InvariantSolution, analytic_phases,
                        analytic_phases_ac, analytic_phases_combined,
                        analytic_phases_stern, combined_cone, cone_solution,
                        eigenspinor, liouville_residual, solve_beta,
                        stern_cone, stern_eigenspinor, stern_geometric_phase)
from .propagate import (ConvergenceReport, PhaseDecomposition,
                        QuantumTrajectory, convergence_probe,
                        decompose_phases, propagate, propagate_combined,
                        propagate_ring, propagate_stern)
from .classical import (ClassicalSpinTrajectory, FluxLedger,
                        MotiveForceReport, SternSIEstimate, cone_sampler,
                        effective_potential, faraday_compare, flux_ledger,
                        line_integral_aeff, precess, precession_axis,
                        ryu_motive_force, stern_si_estimate)
from .config import (ConfigError, EmitFlags, RunConfig, SweepConfig,
                     config_hash, parse_config, parse_config_text,
                     render_config)

__version__ = "0.1.0"

__all__ = [
    "ACRingScenario", "AnalyticPhases", "ClassicalSpinTrajectory",
    "CombinedScenario", "ConfigError", "ConvergenceReport", "DriveProtocol",
    "EmitFlags", "FluxLedger", "HermitianObservable", "IDENTITY",
    "InvariantSolution", "MotiveForceReport", "PhaseDecomposition",
    "QuantumTrajectory", "RunConfig", "SIGMA_X", "SIGMA_Y", "SIGMA_Z",
    "SternSIEstimate", "SternScenario", "SweepConfig", "UnitSystem",
    "analytic_phases", "analytic_phases_ac", "analytic_phases_combined",
    "analytic_phases_stern", "b0_stern", "b_phi", "bloch", "combined_cone",
    "cone_axis", "cone_sampler", "cone_solution", "config_hash",
    "convergence_probe", "decompose_phases", "effective_potential",
    "eigenspinor", "electric_field_vector", "evaluate_drive", "exp_unitary",
    "expectation", "faraday_compare", "flux_ledger", "line_integral_aeff",
    "liouville_residual", "magnetic_field_vector", "normalize",
    "orbital_energy", "overlap", "parse_config", "parse_config_text",
    "precess", "precession_axis", "propagate", "propagate_combined",
    "propagate_ring", "propagate_stern", "render_config", "ryu_motive_force",
    "solve_beta", "stern_cone", "stern_eigenspinor", "stern_geometric_phase",
    "stern_si_estimate", "with_drive_value",
]
