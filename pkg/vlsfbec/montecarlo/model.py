from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field

from vlsfbec import constants as const
from vlsfbec.types import MessagePolicy, Scheme


@dataclass
class BlockStats:
    """
    Sufficient statistics of a block of trials. Every field is an integer so
    merging blocks in any order gives the same totals.
    """

    trials: int = 0
    tau_sum: int = 0
    tau_sq_sum: int = 0
    failures: int = 0
    undetected: int = 0
    rank_counts: Dict[int, List[int]] = field(default_factory=dict)

    def merge(self, other: "BlockStats") -> "BlockStats":
        counts = {n: list(c) for n, c in self.rank_counts.items()}
        for n, c in other.rank_counts.items():
            if n in counts:
                counts[n] = [a + b for a, b in zip(counts[n], c)]
            else:
                counts[n] = list(c)
        return BlockStats(
            trials=self.trials + other.trials,
            tau_sum=self.tau_sum + other.tau_sum,
            tau_sq_sum=self.tau_sq_sum + other.tau_sq_sum,
            failures=self.failures + other.failures,
            undetected=self.undetected + other.undetected,
            rank_counts=counts,
        )


class SimReport(BaseModel):
    """
    SimReport summarises a Monte Carlo run of the VLSF code.

    rank_histograms[n][r] counts the trials whose generator matrix had rank r
    after n channel uses.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    k: int
    p: float
    scheme: Scheme
    schedule: str = Field(..., description="'unbounded' or the decoding times")
    message_policy: MessagePolicy
    seed: int
    rng: str = const.RNG_ALGORITHM
    trials: int = Field(..., ge=1)
    tau_sum: int
    tau_sq_sum: int
    mean_tau: float
    stderr_tau: float
    errors: int
    error_rate: float
    error_ci: Tuple[float, float]
    undetected_errors: int
    rank_histograms: Dict[int, List[int]] = Field(default_factory=dict)

    def full_rank_count(self, n: int) -> int:
        return self.rank_histograms[n][self.k]

    def full_rank_rate(self, n: int) -> float:
        return self.full_rank_count(n) / self.trials


class Comparison(BaseModel):
    """A single check of a simulated quantity against its exact value."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    measured: float
    analytic: float
    z_score: float
    passed: bool
    interval: Tuple[float, float] | None = None
    diagnostic: str | None = None

    @computed_field
    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"
