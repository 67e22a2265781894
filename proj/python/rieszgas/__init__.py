"""Confined particle-gas sampling, equilibrium measures, and diagnostics."""

from ._core import (
    ConfigError,
    EquilibriumResult,
    GasModel,
    NumericalError,
    RadialDensity,
    RunResult,
    SingularityError,
    UnsupportedModelError,
    UsageError,
    energy_delta,
    energy_gradient,
    fortet_mourier,
    max_radius,
    nice_partition,
    prescribed_field_table,
    radial_coulomb_potential,
    radial_ks,
    run_chain,
    solve_radial_coulomb,
    total_energy,
    uniform_ball_radius,
)

__all__ = [
    "ConfigError",
    "EquilibriumResult",
    "GasModel",
    "NumericalError",
    "RadialDensity",
    "RunResult",
    "SingularityError",
    "UnsupportedModelError",
    "UsageError",
    "energy_delta",
    "energy_gradient",
    "fortet_mourier",
    "max_radius",
    "nice_partition",
    "prescribed_field_table",
    "radial_coulomb_potential",
    "radial_ks",
    "run_chain",
    "solve_radial_coulomb",
    "total_energy",
    "uniform_ball_radius",
]
