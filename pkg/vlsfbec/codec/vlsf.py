import math
from typing import Iterable, List

import vlsfbec.util.log as log
from vlsfbec.channel import (
    ChannelParams,
    RandomStream,
    Symbol,
    TrialStreams,
    transmit,
)
from vlsfbec.exceptions import ChannelError, DimensionError
from vlsfbec.gf2 import BitVector, RankTracker, insert_packed, solve_packed
from vlsfbec.types import Scheme

from .model import DecodeFailure, DecodingSchedule, EncodedSymbol, EncoderSpec, TrialOutcome


def encode_symbol(
    spec: EncoderSpec, b: BitVector, n: int, common: RandomStream
) -> EncodedSymbol:
    """
    Produce the channel input at time n and the generator column behind it.

    ST-RLFC sends b_n with column e_n for n <= k; every other use draws a
    uniform nonzero column from the shared stream and sends its inner product
    with b. The decoder rebuilds the same column from its copy of the stream.

    Args:
        spec (EncoderSpec): the encoder
        b (BitVector): the k-bit message
        n (int): the time instant, starting at 1
        common (RandomStream): the common randomness shared with the decoder

    Returns:
        EncodedSymbol: the bit x and column g
    """
    if b.k != spec.k:
        raise DimensionError(f"message has {b.k} bits, encoder expects {spec.k}")
    g = spec.generator(n, common)
    return EncodedSymbol(g.dot(b), g)


def decode_at(tracker: RankTracker) -> BitVector | DecodeFailure:
    """The message if the tracker has full rank, otherwise a failure marker."""
    if tracker.is_full_rank():
        return tracker.solve_message()
    return DecodeFailure(rank=tracker.rank, k=tracker.k)


def run_trial(
    spec: EncoderSpec,
    params: ChannelParams,
    schedule: DecodingSchedule,
    b: BitVector,
    streams: TrialStreams,
    observe_times: Iterable[int] = (),
) -> TrialOutcome:
    """
    Simulate one transmission of b until the decoder stops.

    With the unbounded schedule the decoder stops at the first n where the
    received columns have rank k. With a finite schedule the rank is only
    inspected at the decoding times, and the last time forces a stop whether
    or not the rank is full.

    Args:
        observe_times (Iterable[int]): extra times at which to record the rank,
            the simulation runs past the stop time if one of them is later

    Raises:
        ChannelError: for the unbounded schedule over a channel with p = 1
        DimensionError: if b does not have k bits
    """
    k = spec.k
    if b.k != k:
        raise DimensionError(f"message has {b.k} bits, encoder expects {k}")
    if schedule.is_unbounded and params.p >= 1.0:
        raise ChannelError("the unbounded schedule never stops when every symbol is erased")

    observe = frozenset(observe_times)
    horizon = max(observe, default=0)
    looks = None if schedule.is_unbounded else frozenset(schedule.times)
    final = schedule.final

    tracker = RankTracker(k)
    ranks = {}
    stop_time = None
    decoded = None
    stop_rank = 0
    n = 0
    while stop_time is None or n < horizon:
        n += 1
        x, g = encode_symbol(spec, b, n, streams.common)
        y = transmit(params, streams.erasure, x)
        if y is Symbol.ERASED:
            tracker.insert_erasure()
        else:
            tracker.insert_column(g, y.bit)
        if n in observe:
            ranks[n] = tracker.rank
        if stop_time is not None:
            continue
        if looks is None:
            if tracker.is_full_rank():
                stop_time, decoded, stop_rank = n, tracker.solve_message(), k
        elif n in looks and (tracker.is_full_rank() or n == final):
            stop_time, decoded, stop_rank = n, decode_at(tracker), tracker.rank

    success = isinstance(decoded, BitVector)
    if not success:
        log.trace(f"decoder gave up at n={stop_time} with rank {decoded.rank}/{k}")
    return TrialOutcome(
        stop_time=stop_time,
        message=decoded,
        success=success,
        stop_rank=stop_rank,
        ranks=ranks,
    )


def _draw_size(k: int, p: float, horizon: int) -> int:
    """Symbols to draw per refill, about twice the mean stopping time."""
    if p >= 1.0:
        return max(horizon, 1)
    return max(horizon, math.ceil(2 * (k + 2) / (1.0 - p)) + 8)


def run_trial_packed(
    spec: EncoderSpec,
    params: ChannelParams,
    schedule: DecodingSchedule,
    b: int,
    streams: TrialStreams,
    observe_times: Iterable[int] = (),
) -> TrialOutcome:
    """
    ``run_trial`` on packed integers, for bulk simulation.

    The erasure pattern and the generator words are drawn in blocks and used
    in the order ``run_trial`` draws them, so for the same streams both
    return the same outcome. No BitVector is built before the decode.

    Args:
        b (int): the message packed as in BitVector.bits
    """
    k = spec.k
    p = params.p
    if schedule.is_unbounded and p >= 1.0:
        raise ChannelError("the unbounded schedule never stops when every symbol is erased")

    observe = frozenset(observe_times)
    horizon = max(observe, default=0)
    looks = None if schedule.is_unbounded else frozenset(schedule.times)
    final = schedule.final
    systematic = k if spec.scheme is Scheme.ST_RLFC else 0
    size = _draw_size(k, p, max(horizon, final or 0))

    erased: List[bool] = []
    words: List[int] = []
    basis = {}
    ranks = {}
    stop_time = None
    decoded: BitVector | DecodeFailure | None = None
    stop_rank = 0
    n = 0
    w = 0
    while stop_time is None or n < horizon:
        if n == len(erased):
            erased.extend((streams.erasure.uniforms(size) < p).tolist())
        n += 1
        if n <= systematic:
            g = 1 << (n - 1)
        else:
            if w == len(words):
                words.extend(streams.common.nonzero_words(size, k))
            g = words[w]
            w += 1
        if not erased[n - 1]:
            insert_packed(basis, g, (g & b).bit_count() & 1)
        rank = len(basis)
        if n in observe:
            ranks[n] = rank
        if stop_time is not None:
            continue
        if rank == k:
            if looks is None or n in looks:
                stop_time, stop_rank = n, k
                decoded = BitVector(k, solve_packed(basis, k))
        elif looks is not None and n == final:
            stop_time, stop_rank = n, rank
            decoded = DecodeFailure(rank=rank, k=k)

    success = isinstance(decoded, BitVector)
    if not success:
        log.trace(f"decoder gave up at n={stop_time} with rank {stop_rank}/{k}")
    return TrialOutcome(
        stop_time=stop_time,
        message=decoded,
        success=success,
        stop_rank=stop_rank,
        ranks=ranks,
    )
