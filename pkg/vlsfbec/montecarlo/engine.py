"""
Trial orchestration for the VLSF code over the BEC.

Trials are cut into fixed blocks of TRIAL_BLOCK_SIZE indices. Each trial
derives its own streams from (seed, trial index), each block returns integer
sums, and the blocks are merged in index order, so a report does not depend
on how many workers ran it.
"""

from concurrent.futures import ProcessPoolExecutor
from functools import reduce
from typing import Iterable, List, Optional, Tuple

import vlsfbec.util.log as log
from vlsfbec import constants as const
from vlsfbec.channel import ChannelParams, trial_streams
from vlsfbec.codec import DecodingSchedule, EncoderSpec, run_trial_packed
from vlsfbec.exceptions import SimulationError
from vlsfbec.gf2 import BitVector
from vlsfbec.types import MessagePolicy

from .model import BlockStats, SimReport
from .stats import clopper_pearson, sample_moments


def _message(policy: MessagePolicy, k: int, fixed: Optional[BitVector], streams) -> BitVector:
    if policy is MessagePolicy.ZERO:
        return BitVector.zero(k)
    if policy is MessagePolicy.FIXED:
        return fixed
    return streams.message.bits(k)


def run_block(
    spec: EncoderSpec,
    params: ChannelParams,
    schedule: DecodingSchedule,
    seed: int,
    start: int,
    stop: int,
    policy: MessagePolicy,
    message: Optional[BitVector],
    observe: Tuple[int, ...],
) -> BlockStats:
    """
    Run trials start..stop-1 and return their sufficient statistics.
    """
    k = spec.k
    stats = BlockStats(rank_counts={n: [0] * (k + 1) for n in observe})
    for trial in range(start, stop):
        streams = trial_streams(seed, trial)
        b = _message(policy, k, message, streams)
        outcome = run_trial_packed(spec, params, schedule, b.bits, streams, observe)
        stats.trials += 1
        stats.tau_sum += outcome.stop_time
        stats.tau_sq_sum += outcome.stop_time * outcome.stop_time
        if not outcome.success:
            stats.failures += 1
        elif outcome.message != b:
            stats.undetected += 1
        for n, r in outcome.ranks.items():
            stats.rank_counts[n][r] += 1
    log.trace(log.format_fields({"start": start, "stop": stop}, prefix="trial block done"))
    return stats


def _run_block_args(args) -> BlockStats:
    return run_block(*args)


def _blocks(trials: int) -> List[Tuple[int, int]]:
    size = const.TRIAL_BLOCK_SIZE
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def estimate(
    spec: EncoderSpec,
    params: ChannelParams,
    schedule: DecodingSchedule,
    trials: int = const.DEFAULT_TRIALS,
    seed: Optional[int] = None,
    message_policy: MessagePolicy | str = MessagePolicy.RANDOM,
    message: Optional[BitVector] = None,
    workers: int = 1,
    observe_times: Iterable[int] = (),
) -> SimReport:
    """
    Simulate the code and summarise the stopping time, the decoding errors and
    the rank at the requested times.

    Args:
        spec (EncoderSpec): message length and encoder
        params (ChannelParams): the channel, its seed is used when seed is None
        schedule (DecodingSchedule): when the decoder may stop
        trials (int): number of independent transmissions
        seed (int, optional): master seed
        message_policy (MessagePolicy): zero, fixed (needs message) or random
        message (BitVector, optional): the message for the fixed policy
        workers (int): processes to use, 1 runs in process
        observe_times (Iterable[int]): times at which to histogram the rank,
            the decoding times of a finite schedule are always included

    Returns:
        SimReport: the aggregated statistics

    Raises:
        SimulationError: for an invalid request
        ChannelError: for the unbounded schedule over BEC(1)
    """
    policy = MessagePolicy(message_policy) if isinstance(message_policy, str) else message_policy
    if trials < 1:
        raise SimulationError(f"trials must be positive, got {trials}")
    if workers < 1:
        raise SimulationError(f"workers must be positive, got {workers}")
    if policy is MessagePolicy.FIXED:
        if message is None:
            raise SimulationError("the fixed message policy needs a message")
        if message.k != spec.k:
            raise SimulationError(f"message has {message.k} bits, encoder expects {spec.k}")
    seed = params.seed if seed is None else seed

    observe = set(observe_times)
    if not schedule.is_unbounded:
        observe.update(schedule.times)
    if any(n < 1 for n in observe):
        raise SimulationError("observation times start at 1")
    observe = tuple(sorted(observe))

    blocks = _blocks(trials)
    args = [(spec, params, schedule, seed, a, b, policy, message, observe) for a, b in blocks]
    log.info(
        {
            "simulating k": spec.k,
            "p": params.p,
            "scheme": spec.scheme,
            "schedule": schedule,
            "trials": trials,
            "blocks": len(blocks),
            "workers": workers,
        }
    )
    if workers == 1 or len(blocks) == 1:
        results = [_run_block_args(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_block_args, args))
    empty = BlockStats(rank_counts={n: [0] * (spec.k + 1) for n in observe})
    stats = reduce(BlockStats.merge, results, empty)

    mean, stderr = sample_moments(stats.trials, stats.tau_sum, stats.tau_sq_sum)
    errors = stats.failures + stats.undetected
    if stats.undetected:
        log.error(f"{stats.undetected} trials decoded to the wrong message")
    return SimReport(
        k=spec.k,
        p=params.p,
        scheme=spec.scheme,
        schedule=str(schedule),
        message_policy=policy,
        seed=seed,
        trials=stats.trials,
        tau_sum=stats.tau_sum,
        tau_sq_sum=stats.tau_sq_sum,
        mean_tau=mean,
        stderr_tau=stderr,
        errors=errors,
        error_rate=errors / stats.trials,
        error_ci=clopper_pearson(errors, stats.trials),
        undetected_errors=stats.undetected,
        rank_histograms=stats.rank_counts,
    )
