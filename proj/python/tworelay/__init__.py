"""Outage-optimal power allocation for three-phase two-way decode-and-forward relaying.

Thin wrapper over the C++ core. A relay cutoff of ``None`` means the relay is
never budget limited.
"""

from ._core import (
    BracketError,
    ConvergenceError,
    FpaConfig,
    RegionCase,
    RelayPolicy,
    SimReport,
    SystemConfig,
    UsageError,
    delta_of_rate,
    endnode_average_power,
    exp_integral_e1,
    max_avg_relay_power,
    min_outage,
    outage_fpa,
    power_gain,
    power_gains_csv,
    run_fpa,
    run_opa,
    solve_cutoff,
    solve_policies,
    solve_rho,
    sweep_total_power_csv,
    validate_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
