"""Singularity dynamics of a degenerate parabolic equation.

Thin Python layer over the C++ core: truncated Hugoniot-type chain
integrators for heat-wave fronts, the vortex-type cascade ODE system, and an
explicit finite-difference reference solver with front extraction.
"""

from _singdyn import (  # noqa: F401
    SingdynError,
    VortexState,
    chain_rhs,
    exact_wave,
    extract_front,
    free_boundary_residual,
    gamma_front_speed,
    normal_velocity,
    physical_to_reduced,
    run_acceptance,
    run_chain,
    run_scenario,
    run_vortex,
    solve_model_1d,
    solve_reduced_radial,
    vortex_consistency,
    vortex_rhs,
)

__version__ = "0.1.0"

__all__ = [
    "SingdynError",
    "VortexState",
    "chain_rhs",
    "exact_wave",
    "extract_front",
    "free_boundary_residual",
    "gamma_front_speed",
    "normal_velocity",
    "physical_to_reduced",
    "run_acceptance",
    "run_chain",
    "run_scenario",
    "run_vortex",
    "solve_model_1d",
    "solve_reduced_radial",
    "vortex_consistency",
    "vortex_rhs",
]
