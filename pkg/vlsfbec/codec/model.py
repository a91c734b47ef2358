from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional

from pydantic import ConfigDict, Field, field_validator

from vlsfbec.channel import RandomStream, draw_base_vector
from vlsfbec.gf2 import BitVector
from vlsfbec.types import FreezableBaseModel, Scheme


class EncoderSpec(FreezableBaseModel):
    """
    EncoderSpec selects the message length and the encoder used for every
    channel use.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    k: int = Field(..., ge=1, description="Message length in bits")
    scheme: Scheme = Field(Scheme.ST_RLFC, description="Encoder to use")

    @field_validator("scheme", mode="before")
    @classmethod
    def validate_scheme(cls, scheme: Scheme | str) -> Scheme:
        if isinstance(scheme, str):
            try:
                return Scheme(scheme.lower())
            except ValueError:
                raise ValueError(
                    f"Scheme {scheme} is not supported, must be one of {' | '.join(s.value for s in Scheme)}"
                )
        return scheme

    def generator(self, n: int, common: RandomStream) -> BitVector:
        """
        The generator column of time n. Both ends call this with their own
        copy of the common stream, in time order.
        """
        if n < 1:
            raise ValueError(f"time instants start at 1, got {n}")
        if self.scheme is Scheme.ST_RLFC and n <= self.k:
            return BitVector.unit(n, self.k)
        return draw_base_vector(common, self.k)


class DecodingSchedule(FreezableBaseModel):
    """
    The times at which the decoder may inspect the rank and stop. ``times``
    of None is the unbounded schedule where every time instant is a look.
    """

    model_config = ConfigDict(extra="forbid")

    times: Optional[List[int]] = Field(
        None, description="Strictly increasing decoding times, None for unbounded"
    )

    @field_validator("times")
    @classmethod
    def validate_times(cls, times: Optional[List[int]]) -> Optional[List[int]]:
        if times is None:
            return None
        if len(times) == 0:
            raise ValueError("a finite schedule needs at least one decoding time")
        if times[0] < 1:
            raise ValueError(f"decoding times must be positive, got {times[0]}")
        for a, b in zip(times, times[1:]):
            if b <= a:
                raise ValueError(f"decoding times must be strictly increasing: {a} then {b}")
        return times

    @classmethod
    def unbounded(cls) -> "DecodingSchedule":
        return cls(times=None)

    @classmethod
    def of(cls, *times: int) -> "DecodingSchedule":
        return cls(times=list(times))

    @property
    def is_unbounded(self) -> bool:
        return self.times is None

    @property
    def m(self) -> Optional[int]:
        return None if self.times is None else len(self.times)

    @property
    def final(self) -> Optional[int]:
        return None if self.times is None else self.times[-1]

    def __str__(self) -> str:
        if self.times is None:
            return "unbounded"
        return ",".join(str(t) for t in self.times)


class EncodedSymbol(NamedTuple):
    x: int
    g: BitVector


@dataclass(frozen=True)
class DecodeFailure:
    """Marker returned when the decoder has to give up with a rank deficit."""

    rank: int
    k: int

    def __bool__(self) -> bool:
        return False


@dataclass
class TrialOutcome:
    stop_time: int
    message: BitVector | DecodeFailure
    success: bool
    stop_rank: int
    ranks: Dict[int, int] = field(default_factory=dict)

    def rank_at(self, n: int) -> int:
        """Rank observed at a requested time n."""
        return self.ranks[n]
