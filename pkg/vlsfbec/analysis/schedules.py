"""
Choice of decoding times n_1 < ... < n_m for the finite-look rank decoder.

The expected blocklength of a schedule is

    N(n_1^m) = n_1 + sum_{i<m} (n_{i+1} - n_i) (1 - P[S_{n_i} = k])

and its error probability is at most 1 - P[S_{n_m} = k]. For fixed earlier
looks N grows with n_m, so the last look sits at the smallest time that meets
the error target and the remaining looks are placed by a shortest path search.
"""

import itertools
from typing import Iterable, List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

import vlsfbec.util.log as log
from vlsfbec.exceptions import ScheduleError, ScheduleInfeasibleError
from vlsfbec.types import SolverMethod

from .bounds import adjusted_strlfc
from .phase_type import build_chain, prob_full_rank, prob_full_rank_curve

_TIE_TOLERANCE = 1e-12


class ScheduleSolution(BaseModel):
    """
    ScheduleSolution is a set of decoding times with its guarantees.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    k: int = Field(..., ge=1)
    p: float = Field(..., ge=0.0, lt=1.0)
    delta: float = Field(..., gt=0.0, lt=1.0)
    schedule: List[int] = Field(..., description="Decoding times n_1 < ... < n_m")
    objective: float = Field(..., description="Expected blocklength bound N")
    error_bound: float = Field(..., description="1 - P[S_{n_m} = k]")
    method: SolverMethod = Field(..., description="Solver that produced the schedule")

    @computed_field
    @property
    def m(self) -> int:
        return len(self.schedule)

    @computed_field
    @property
    def rate(self) -> float:
        return self.k / self.objective

    @model_validator(mode="after")
    def validate_schedule(self):
        if not self.schedule or self.schedule[0] < 1:
            raise ValueError("schedule must start at a positive time")
        if any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
            raise ValueError("schedule must be strictly increasing")
        return self


def objective(schedule: Sequence[int], curve: np.ndarray) -> float:
    """
    N(n_1^m) for a schedule, with curve[n] = P[S_n = k].
    """
    n = list(schedule)
    total = float(n[0])
    for a, b in zip(n, n[1:]):
        total += (b - a) * (1.0 - curve[a])
    return total


def _check_inputs(k: int, p: float, delta: float) -> None:
    if k < 1:
        raise ScheduleError(f"k must be positive, got {k}")
    if not 0.0 < delta < 1.0:
        raise ScheduleError(f"delta={delta} outside (0, 1)")
    if not 0.0 <= p < 1.0:
        raise ScheduleInfeasibleError(f"no schedule reaches full rank over BEC({p})")


def min_feasible_final_time(k: int, p: float, delta: float) -> int:
    """
    Smallest n with P[S_n = k] >= 1 - delta, by doubling then bisection.
    """
    _check_inputs(k, p, delta)
    chain = build_chain(k, p)

    def feasible(n: int) -> bool:
        return 1.0 - prob_full_rank(chain, n) <= delta

    lo, hi = k - 1, k
    step = 1
    while not feasible(hi):
        lo = hi
        hi = k + step
        step *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    log.trace(f"minimal final look k={k} p={p} delta={delta:g}: n={hi}")
    return hi


def _solution(k, p, delta, schedule, curve, method) -> ScheduleSolution:
    return ScheduleSolution(
        k=k,
        p=p,
        delta=delta,
        schedule=list(schedule),
        objective=objective(schedule, curve),
        error_bound=1.0 - float(curve[schedule[-1]]),
        method=method,
    )


def _solve_dp(m: int, final: int, floor: int, curve: np.ndarray) -> List[int]:
    """
    Lexicographically smallest optimal schedule ending at ``final`` with all
    looks in [floor, final].

    ``tail[j][a]`` is the least cost of the part of the schedule after a look
    at ``a`` when j more looks remain, the last of them at ``final``.
    """
    positions = np.arange(floor, final + 1)
    size = positions.size
    miss = 1.0 - curve[positions]
    # edge[a, b] = (b - a) (1 - P[S_a = k]) for a < b
    gaps = positions[None, :] - positions[:, None]
    edge = np.where(gaps > 0, gaps * miss[:, None], np.inf)

    tail = [np.full(size, np.inf)]
    tail[0][-1] = 0.0
    for _ in range(1, m):
        tail.append((edge + tail[-1][None, :]).min(axis=1))

    start = positions + tail[m - 1]
    best = start.min()
    if not np.isfinite(best):
        raise ScheduleInfeasibleError(f"no {m}-look schedule ends at {final}")

    def first_within(values: np.ndarray, target: float, after: int) -> int:
        slack = _TIE_TOLERANCE * max(1.0, abs(target))
        for idx in range(after, size):
            if values[idx] <= target + slack:
                return idx
        raise ScheduleInfeasibleError("optimal schedule could not be reconstructed")

    idx = first_within(start, best, 0)
    chosen = [idx]
    remaining = tail[m - 1][idx]
    for j in range(m - 1, 0, -1):
        row = edge[idx] + tail[j - 1]
        idx = first_within(row, remaining, idx + 1)
        remaining = tail[j - 1][idx]
        chosen.append(idx)
    return [int(positions[i]) for i in chosen]


def _solve_exhaustive(
    m: int, horizon: int, curve: np.ndarray, delta: float
) -> List[int]:
    """Every m-subset of [1, horizon] whose last look meets the target."""
    best, best_schedule = np.inf, None
    for schedule in itertools.combinations(range(1, horizon + 1), m):
        if 1.0 - curve[schedule[-1]] > delta:
            continue
        value = objective(schedule, curve)
        # combinations come in lexicographic order, keep the first optimum
        if value < best - _TIE_TOLERANCE * max(1.0, value):
            best, best_schedule = value, list(schedule)
    if best_schedule is None:
        raise ScheduleInfeasibleError(f"no {m}-look schedule within horizon {horizon}")
    return best_schedule


def _solve_heuristic(m: int, final: int, floor: int, curve: np.ndarray) -> List[int]:
    """Looks where P[S_n = k] first crosses the quantiles j/m of its final value."""
    target = curve[final]
    times: List[int] = []
    last = floor - 1
    for j in range(1, m):
        level = target * j / m
        candidates = [n for n in range(last + 1, final) if curve[n] >= level]
        n = candidates[0] if candidates else last + 1
        # leave room for the looks still to place
        n = min(n, final - (m - j))
        n = max(n, last + 1)
        times.append(n)
        last = n
    times.append(final)
    return times


def optimize_schedule(
    k: int,
    p: float,
    m: int,
    delta: float,
    method: SolverMethod | str = SolverMethod.DP,
    horizon: int | None = None,
) -> ScheduleSolution:
    """
    Minimise N(n_1^m) subject to 1 - P[S_{n_m} = k] <= delta.

    Args:
        k (int): message length
        p (float): erasure probability
        m (int): number of decoding times
        delta (float): target error probability
        method (SolverMethod): dp and exhaustive are exact, heuristic is only
            guaranteed feasible
        horizon (int, optional): last time the exhaustive search considers,
            defaults to two past the minimal final look

    Raises:
        ScheduleInfeasibleError: if fewer than m times exist up to the minimal
            final look, or p = 1
    """
    method = SolverMethod(method) if isinstance(method, str) else method
    if m < 1:
        raise ScheduleError(f"m must be positive, got {m}")
    final = min_feasible_final_time(k, p, delta)
    if final < m:
        raise ScheduleInfeasibleError(
            f"only {final} decoding times exist up to n={final}, cannot place m={m}"
        )
    chain = build_chain(k, p)

    if method is SolverMethod.EXHAUSTIVE:
        horizon = final + 2 if horizon is None else horizon
        curve = prob_full_rank_curve(chain, horizon)
        schedule = _solve_exhaustive(m, horizon, curve, delta)
    else:
        curve = prob_full_rank_curve(chain, final)
        # looks before k cost nothing and gain nothing, use them only to make room
        floor = max(1, min(k, final - m + 1))
        if method is SolverMethod.DP:
            schedule = _solve_dp(m, final, floor, curve)
        else:
            schedule = _solve_heuristic(m, final, floor, curve)

    solution = _solution(k, p, delta, schedule, curve, method)
    log.debug(
        {
            "schedule solved k": k,
            "p": p,
            "m": m,
            "method": method,
            "N": solution.objective,
            "final": schedule[-1],
        }
    )
    return solution


class SweepRow(BaseModel):
    """One point of the rate versus m dataset."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    k: int
    m: int
    feasible: bool
    solution: ScheduleSolution | None = None
    reference_l: float = Field(..., description="Adjusted unbounded-schedule blocklength")

    @computed_field
    @property
    def reference_rate(self) -> float:
        return self.k / self.reference_l


def rate_vs_m_sweep(
    k_range: Iterable[int],
    p: float,
    m_list: Iterable[int],
    delta: float,
    method: SolverMethod | str = SolverMethod.DP,
) -> List[SweepRow]:
    """
    Optimal schedules for every (m, k), with the (1 - delta) scaled
    unbounded-schedule bound as the m = infinity reference.
    """
    rows: List[SweepRow] = []
    ks = list(k_range)
    for m in m_list:
        for k in ks:
            reference = adjusted_strlfc(k, p, delta).value
            try:
                solution = optimize_schedule(k, p, m, delta, method)
            except ScheduleInfeasibleError as e:
                log.warn(f"skipping m={m} k={k}: {e}")
                rows.append(SweepRow(k=k, m=m, feasible=False, reference_l=reference))
                continue
            rows.append(
                SweepRow(k=k, m=m, feasible=True, solution=solution, reference_l=reference)
            )
    return rows
