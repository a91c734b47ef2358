from .bounds import (  # noqa
    BackoffBounds,
    BoundResult,
    adjusted_strlfc,
    backoff_bounds,
    bounds_row,
    converse,
    corollary2_margin,
    devassy_achievability,
    early_termination_adjust,
    heidarzadeh_reference,
    rate_from_blocklength,
    strlfc_achievability,
)
from .phase_type import (  # noqa
    PhaseChain,
    RankDistribution,
    absorption_pmf,
    build_chain,
    expected_rank_gap,
    expected_stop_time,
    expected_stop_time_linear_solve,
    expected_stop_time_rlfc,
    expected_stop_time_series,
    full_rank_curve,
    prob_full_rank,
    prob_full_rank_curve,
    rank_distribution,
)
from .schedules import (  # noqa
    ScheduleSolution,
    SweepRow,
    min_feasible_final_time,
    objective,
    optimize_schedule,
    rate_vs_m_sweep,
)
