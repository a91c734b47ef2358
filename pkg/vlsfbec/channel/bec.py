from enum import Enum
from typing import List, NamedTuple, Tuple

import numpy as np
from pydantic import ConfigDict, Field

from vlsfbec import constants as const
from vlsfbec.gf2 import BitVector
from vlsfbec.types import FreezableBaseModel

_BUFFER = 256
_U64 = 64
# a uniform is the top 53 bits of a raw word scaled into [0, 1)
_DOUBLE_SHIFT = 11
_DOUBLE_UNIT = 1.0 / (1 << 53)


class Symbol(Enum):
    """The BEC output alphabet {0, ?, 1}."""

    ZERO = 0
    ONE = 1
    ERASED = "?"

    @classmethod
    def from_bit(cls, x: int) -> "Symbol":
        return cls.ONE if x else cls.ZERO

    @property
    def bit(self) -> int:
        if self is Symbol.ERASED:
            raise ValueError("an erased symbol carries no bit")
        return self.value

    def __str__(self):
        return str(self.value)


class ChannelParams(FreezableBaseModel):
    """
    ChannelParams describes one BEC(p) and the master seed of an experiment.

    p = 1 is representable so finite schedules over a dead channel can be
    reported; unbounded schedules reject it at simulation time.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    p: float = Field(..., ge=0.0, le=1.0, description="Erasure probability")
    seed: int = Field(
        const.DEFAULT_SEED, ge=0, lt=2**64, description="Master seed (64-bit unsigned)"
    )

    @property
    def capacity(self) -> float:
        return 1.0 - self.p


class RandomStream:
    """
    A single owner random source over the raw 64-bit words of a PCG64
    generator.

    Every value handed out is a function of the next raw words in order: a
    uniform takes the top 53 bits of one word, an n-bit integer takes
    ceil(n / 64) words. Bulk and single draws can be mixed freely, the values
    only depend on the seed and on how many words were consumed before.
    The generator is built on the first draw.
    """

    algorithm = const.RNG_ALGORITHM

    def __init__(
        self, seed: np.random.SeedSequence | int, spawn_key: Tuple[int, ...] = ()
    ) -> None:
        self._seed = seed
        self._spawn_key = spawn_key
        self._bg: np.random.PCG64 | None = None
        self._raw = np.empty(0, dtype=np.uint64)
        self._r_pos = 0

    def _generator(self) -> np.random.PCG64:
        if self._bg is None:
            seed = self._seed
            if not isinstance(seed, np.random.SeedSequence):
                seed = np.random.SeedSequence(entropy=seed, spawn_key=self._spawn_key)
            self._bg = np.random.PCG64(seed)
        return self._bg

    def raw64(self) -> int:
        if self._r_pos == self._raw.size:
            self._raw = self._generator().random_raw(_BUFFER)
            self._r_pos = 0
        w = self._raw[self._r_pos]
        self._r_pos += 1
        return int(w)

    def raw(self, count: int) -> np.ndarray:
        """The next count raw words as a uint64 array."""
        left = self._raw.size - self._r_pos
        if left == 0:
            return self._generator().random_raw(count)
        take = min(left, count)
        head = self._raw[self._r_pos : self._r_pos + take]  # noqa: E203
        self._r_pos += take
        if take == count:
            return head.copy()
        return np.concatenate((head, self._generator().random_raw(count - take)))

    def uniform(self) -> float:
        """A draw from U[0, 1)."""
        return (self.raw64() >> _DOUBLE_SHIFT) * _DOUBLE_UNIT

    def uniforms(self, count: int) -> np.ndarray:
        """The next count draws from U[0, 1)."""
        return (self.raw(count) >> np.uint64(_DOUBLE_SHIFT)) * _DOUBLE_UNIT

    def word(self, nbits: int) -> int:
        """A uniform integer in [0, 2**nbits)."""
        if nbits < 1:
            raise ValueError("nbits must be positive")
        value = 0
        filled = 0
        while filled < nbits:
            take = min(_U64, nbits - filled)
            value |= (self.raw64() >> (_U64 - take)) << filled
            filled += take
        return value

    def nonzero_words(self, count: int, nbits: int) -> List[int]:
        """
        count nonzero nbits-bit integers, the same values repeated
        calls of ``word`` would give after dropping the zeros.
        """
        if nbits < 1:
            raise ValueError("nbits must be positive")
        if nbits <= _U64:
            shift = np.uint64(_U64 - nbits)
            out: List[int] = []
            while len(out) < count:
                words = self.raw(count - len(out)) >> shift
                out.extend(words[words != 0].tolist())
            return out
        out = []
        while len(out) < count:
            w = self.word(nbits)
            if w:
                out.append(w)
        return out

    def bits(self, k: int) -> BitVector:
        """A uniform vector in {0,1}^k, zero included."""
        return BitVector(k, self.word(k))


class TrialStreams(NamedTuple):
    erasure: RandomStream
    common: RandomStream
    message: RandomStream


def trial_streams(seed: int, trial: int) -> TrialStreams:
    """
    Derive the independent streams of one trial.

    Each stream is seeded from (master seed, trial index, stream tag), so the
    codebook of trial i is the same whatever the erasure pattern, and the same
    for every scheme or schedule simulated with the same master seed.
    """

    def _make(tag: int) -> RandomStream:
        return RandomStream(seed, spawn_key=(trial, tag))

    return TrialStreams(
        erasure=_make(const.STREAM_ERASURE),
        common=_make(const.STREAM_COMMON),
        message=_make(const.STREAM_MESSAGE),
    )


def transmit(params: ChannelParams, stream: RandomStream, x: int) -> Symbol:
    """
    Send one bit through the BEC.

    One uniform draw is consumed per call, including when p is 0 or 1.
    """
    if x not in (0, 1):
        raise ValueError(f"channel input must be 0 or 1, got {x}")
    if stream.uniform() < params.p:
        return Symbol.ERASED
    return Symbol.from_bit(x)


def draw_base_vector(common: RandomStream, k: int) -> BitVector:
    """
    A uniform nonzero vector in {0,1}^k, by rejection of the zero word.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    w = common.word(k)
    while w == 0:
        w = common.word(k)
    return BitVector(k, w)
