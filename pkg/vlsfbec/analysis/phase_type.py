"""
The absorbing Markov chain behind the rank decoder.

After the systematic phase the rank S_n of the received generator columns
moves up by one with probability (1-p)(2^k - 2^r)/(2^k - 1) from rank r and
otherwise stays put, so the time to reach rank k is phase-type distributed.
Every power of two appears in a ratio and is evaluated as exp2 of an exponent
difference, which keeps k in the hundreds finite in double precision.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded
from scipy.stats import binom

import vlsfbec.util.log as log
from vlsfbec import constants as const
from vlsfbec.exceptions import BoundError
from vlsfbec.types import Scheme


def binomial_cdf(i: int, k: int, q: float) -> float:
    """
    F(i; k, q), the probability of at most i successes in k trials.

    Raises:
        ValueError: if i is outside [0, k] or q outside [0, 1]
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 0 <= i <= k:
        raise ValueError(f"i={i} outside [0, {k}]")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q={q} is not a probability")
    if i == k or q == 0.0:
        return 1.0
    if q == 1.0:
        return 0.0
    return float(binom.cdf(i, k, q))


def binomial_pmf(k: int, q: float) -> np.ndarray:
    """P[j successes in k trials] for j = 0..k."""
    out = np.zeros(k + 1)
    if q == 0.0:
        out[0] = 1.0
    elif q == 1.0:
        out[k] = 1.0
    else:
        out[:] = binom.pmf(np.arange(k + 1), k, q)
    return out


def growth_ratios(k: int) -> np.ndarray:
    """(2^k - 1) / (2^k - 2^i) for i = 0..k-1."""
    i = np.arange(k, dtype=float)
    return (1.0 - np.exp2(-float(k))) / (1.0 - np.exp2(i - k))


@dataclass(frozen=True)
class RankDistribution:
    """PMF of the rank over 0..k at time n."""

    n: int
    probs: np.ndarray

    def __post_init__(self):
        if np.any(self.probs < -1e-15) or abs(self.probs.sum() - 1.0) > 1e-12:
            raise ValueError(f"not a distribution at n={self.n}: sum={self.probs.sum()}")

    @property
    def k(self) -> int:
        return self.probs.size - 1

    def mean(self) -> float:
        return float(np.dot(np.arange(self.probs.size), self.probs))

    def full_rank(self) -> float:
        return float(self.probs[-1])


@dataclass(frozen=True)
class PhaseChain:
    """
    The transient part of the rank chain started after the systematic phase.

    Transient state i (0-based) is rank i. ``diag`` and ``upper`` are the
    nonzero bands of T, ``alpha`` is P[S_k = r] for r < k and ``alpha_k`` is
    P[S_k = k].
    """

    k: int
    p: float
    diag: np.ndarray
    upper: np.ndarray
    alpha: np.ndarray
    alpha_k: float

    @property
    def exit(self) -> np.ndarray:
        """t = (I - T) 1, nonzero only in the last row."""
        t = 1.0 - self.diag
        t[:-1] -= self.upper
        return t

    def dense(self) -> np.ndarray:
        """T as a k x k array, for inspection of small chains."""
        t = np.diag(self.diag)
        if self.k > 1:
            t += np.diag(self.upper, 1)
        return t

    def step(self, v: np.ndarray) -> np.ndarray:
        """v^T T, one vector by bidiagonal matrix product."""
        out = v * self.diag
        out[1:] += v[:-1] * self.upper
        return out


def rank_up_probabilities(k: int, p: float) -> np.ndarray:
    """P[S_{n+1} = r + 1 | S_n = r] for r = 0..k-1."""
    return (1.0 - p) / growth_ratios(k)


def build_chain(k: int, p: float) -> PhaseChain:
    """
    Build T and the initial distribution for BEC(p) and k-bit messages.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} is not a probability")
    up = rank_up_probabilities(k, p)
    pmf = binomial_pmf(k, 1.0 - p)
    return PhaseChain(
        k=k,
        p=p,
        diag=1.0 - up,
        upper=up[:-1].copy(),
        alpha=pmf[:-1].copy(),
        alpha_k=float(pmf[-1]),
    )


def _require_capacity(p: float) -> float:
    if p >= 1.0:
        raise BoundError("expected stopping time diverges at p = 1")
    return 1.0 - p


def expected_stop_time(chain: PhaseChain) -> float:
    """
    E[tau] = k + alpha^T (I - T)^{-1} 1 through the closed form of the inverse,
    k + (1/C) sum_i (2^k - 1)/(2^k - 2^i) F(i; k, 1 - p).

    Raises:
        BoundError: if p = 1
    """
    c = _require_capacity(chain.p)
    cdf = np.cumsum(chain.alpha)
    return chain.k + float(np.dot(growth_ratios(chain.k), cdf)) / c


def expected_stop_time_linear_solve(chain: PhaseChain) -> float:
    """E[tau] by back-substitution on the bidiagonal system (I - T) x = 1."""
    _require_capacity(chain.p)
    ab = np.zeros((2, chain.k))
    ab[0, 1:] = -chain.upper
    ab[1, :] = 1.0 - chain.diag
    x = solve_banded((0, 1), ab, np.ones(chain.k))
    return chain.k + float(np.dot(chain.alpha, x))


def expected_stop_time_series(
    chain: PhaseChain,
    tol: float = const.TAIL_TOLERANCE,
    max_steps: int = const.TAIL_MAX_STEPS,
) -> float:
    """E[tau] = k + sum_{n >= k} P[S_n < k], truncated once a term drops below tol."""
    _require_capacity(chain.p)
    v = chain.alpha.copy()
    total = 0.0
    for _ in range(max_steps):
        mass = float(v.sum())
        total += mass
        if mass < tol:
            break
        v = chain.step(v)
    else:
        log.warn(f"tail series for k={chain.k} p={chain.p} stopped after {max_steps} steps")
    return chain.k + total


def prob_full_rank(chain: PhaseChain, n: int) -> float:
    """P[S_n = k] = 1 - alpha^T T^{n-k} 1 for n >= k, and 0 before."""
    if n < chain.k:
        return 0.0
    v = chain.alpha.copy()
    for _ in range(n - chain.k):
        v = chain.step(v)
    return 1.0 - float(v.sum())


def prob_full_rank_curve(chain: PhaseChain, n_max: int) -> np.ndarray:
    """P[S_n = k] for n = 0..n_max in a single pass."""
    curve = np.zeros(n_max + 1)
    if n_max < chain.k:
        return curve
    v = chain.alpha.copy()
    curve[chain.k] = 1.0 - float(v.sum())
    for n in range(chain.k + 1, n_max + 1):
        v = chain.step(v)
        curve[n] = 1.0 - float(v.sum())
    return curve


def absorption_pmf(chain: PhaseChain, n: int) -> float:
    """P[tau = n]."""
    return prob_full_rank(chain, n) - prob_full_rank(chain, n - 1) if n >= 1 else 0.0


def _evolve(dist: np.ndarray, up: np.ndarray, steps: int) -> np.ndarray:
    """Advance a distribution over ranks 0..k through the full k+1 state chain."""
    for _ in range(steps):
        moved = dist[:-1] * up
        dist = dist.copy()
        dist[:-1] -= moved
        dist[1:] += moved
    return dist


def rank_distribution(k: int, p: float, n: int, scheme: Scheme = Scheme.ST_RLFC) -> RankDistribution:
    """
    PMF of S_n under either encoder.

    ST-RLFC is binomial while the systematic bits are being sent and follows
    the chain afterwards, the pure fountain encoder follows the chain from
    rank 0 at time 0.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    up = rank_up_probabilities(k, p)
    if scheme is Scheme.ST_RLFC:
        if n <= k:
            probs = np.zeros(k + 1)
            probs[: n + 1] = binomial_pmf(n, 1.0 - p) if n > 0 else [1.0]
            return RankDistribution(n, probs)
        return RankDistribution(n, _evolve(binomial_pmf(k, 1.0 - p), up, n - k))
    start = np.zeros(k + 1)
    start[0] = 1.0
    return RankDistribution(n, _evolve(start, up, n))


def expected_rank_gap(k: int, p: float) -> float:
    """E[S_k] under ST-RLFC minus E[S_k] under the pure fountain encoder."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return k * (1.0 - p) - rank_distribution(k, p, k, Scheme.PURE_RLFC).mean()


def expected_stop_time_rlfc(k: int, p: float) -> float:
    """E[tau] of the pure fountain encoder, (1/C) sum_i (2^k - 1)/(2^k - 2^i)."""
    c = _require_capacity(p)
    return float(growth_ratios(k).sum()) / c


def full_rank_curve(k: int, p: float, n_max: int, scheme: Scheme = Scheme.ST_RLFC) -> np.ndarray:
    """P[S_n = k] for n = 0..n_max under either encoder."""
    if scheme is Scheme.ST_RLFC:
        return prob_full_rank_curve(build_chain(k, p), n_max)
    up = rank_up_probabilities(k, p)
    curve = np.zeros(n_max + 1)
    dist = np.zeros(k + 1)
    dist[0] = 1.0
    for n in range(1, n_max + 1):
        dist = _evolve(dist, up, 1)
        curve[n] = dist[-1]
    return curve
