"""
Closed-form blocklength bounds for zero-error VLSF codes over BEC(p).

All sums are evaluated with powers of two expressed as ratios, the same way
as in ``phase_type``.
"""

import math
from typing import Any, Dict, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from vlsfbec import constants as const
from vlsfbec.exceptions import BoundError

from .phase_type import build_chain, expected_stop_time, growth_ratios


class BoundResult(BaseModel):
    """
    BoundResult is the value of one bound on the expected blocklength.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(..., description="Which bound produced the value")
    k: float = Field(..., description="Message size in bits, log2 M")
    p: float = Field(..., ge=0.0, le=1.0, description="Erasure probability")
    value: float = Field(..., description="Expected blocklength bound in channel uses")
    variant: str = Field("", description="Formula variant used for the value")

    @computed_field
    @property
    def rate(self) -> float:
        return rate_from_blocklength(self.k, self.value)


class BackoffBounds(NamedTuple):
    devassy: float
    strlfc: float


def rate_from_blocklength(k: float, l: float) -> float:
    """R = log2(M) / E[tau]."""
    if l <= 0:
        raise BoundError(f"blocklength must be positive, got {l}")
    return k / l


def _check_k(k: int) -> None:
    if k < 1:
        raise BoundError(f"k must be a positive integer, got {k}")


def _capacity(p: float) -> float:
    if not 0.0 <= p < 1.0:
        raise BoundError(f"p={p} outside [0, 1)")
    return 1.0 - p


def devassy_sum(k: int) -> float:
    """sum_{i=1}^{k-1} (2^i - 1) / (2^k - 2^i), 0 for k = 1."""
    _check_k(k)
    if k == 1:
        return 0.0
    e = np.arange(1, k, dtype=float) - k
    return float(np.sum((np.exp2(e) - np.exp2(-float(k))) / (1.0 - np.exp2(e))))


def devassy_achievability(k: int, p: float) -> BoundResult:
    """(1/C)(k + sum_{i=1}^{k-1} (2^i - 1)/(2^k - 2^i)), pure fountain coding."""
    _check_k(k)
    c = _capacity(p)
    return BoundResult(
        name="devassy", k=k, p=p, value=(k + devassy_sum(k)) / c, variant="rlfc"
    )


def converse(M: int, p: float) -> BoundResult:
    """
    Minimum average blocklength of a zero-error code with M messages,
    (floor(log2 M) + 2(1 - 2^{floor(log2 M) - log2 M})) / C.
    """
    if M < 2:
        raise BoundError(f"M must be at least 2, got {M}")
    c = _capacity(p)
    floor_log = M.bit_length() - 1
    log_m = math.log2(M)
    value = (floor_log + 2.0 * (1.0 - math.exp2(floor_log - log_m))) / c
    return BoundResult(name="converse", k=log_m, p=p, value=value, variant=f"M={M}")


def strlfc_achievability(k: int, p: float) -> BoundResult:
    """
    k + (1/C) sum_{i=0}^{k-1} (2^k - 1)/(2^k - 2^i) F(i; k, 1 - p), which is the
    exact expected stopping time of systematic transmission followed by
    fountain parity bits.
    """
    _check_k(k)
    _capacity(p)
    value = expected_stop_time(build_chain(k, p))
    return BoundResult(name="strlfc", k=k, p=p, value=value, variant="closed-form")


def corollary2_margin(k: int, p: float) -> float:
    """
    [k + sum (2^i - 1)/(2^k - 2^i)] - [kC + sum (2^k - 1)/(2^k - 2^i) F(i; k, 1 - p)].

    Nonnegative on the closed interval p in [0, 1], zero at p = 1 and at k = 1.
    """
    _check_k(k)
    if not 0.0 <= p <= 1.0:
        raise BoundError(f"p={p} outside [0, 1]")
    chain = build_chain(k, p)
    lhs = k * (1.0 - p) + float(np.dot(growth_ratios(k), np.cumsum(chain.alpha)))
    rhs = k + devassy_sum(k)
    return rhs - lhs


def backoff_bounds(k: int, p: float) -> BackoffBounds:
    """
    Upper bounds on the backoff 1 - R/C. Devassy's bound does not depend on p,
    the systematic one is k/(sum (2^k - 1)/(2^k - 2^i) F(i) + k(1 - p)) away from 1.
    """
    _check_k(k)
    c = _capacity(p)
    devassy = 1.0 - k / (k + devassy_sum(k))
    chain = build_chain(k, p)
    weighted = float(np.dot(growth_ratios(k), np.cumsum(chain.alpha)))
    strlfc = 1.0 - k / (weighted + k * c)
    return BackoffBounds(devassy=devassy, strlfc=strlfc)


def early_termination_adjust(l: float, epsilon: float) -> float:
    """
    Blocklength bound of the code that stops at time 0 with probability
    epsilon and otherwise runs the zero-error code: l (1 - epsilon).
    """
    if not 0.0 <= epsilon < 1.0:
        raise BoundError(f"epsilon={epsilon} outside [0, 1)")
    return l * (1.0 - epsilon)


def adjusted_strlfc(k: int, p: float, delta: float) -> BoundResult:
    """The systematic bound scaled for a target error probability delta."""
    base = strlfc_achievability(k, p)
    return BoundResult(
        name="adjusted_strlfc",
        k=k,
        p=p,
        value=early_termination_adjust(base.value, delta),
        variant=f"delta={delta:g}",
    )


def heidarzadeh_reference(k: int, p: float) -> BoundResult:
    """(k + c)/C with c the Erdos-Borwein constant, quoted as a reference value."""
    _check_k(k)
    c = _capacity(p)
    return BoundResult(
        name="heidarzadeh", k=k, p=p, value=(k + const.ERDOS_BORWEIN) / c, variant="reference"
    )


def bounds_row(k: int, p: float) -> Dict[str, Any]:
    """Every bound for one (k, p), keyed by output column."""
    devassy = devassy_achievability(k, p)
    strlfc = strlfc_achievability(k, p)
    conv = converse(2**k, p)
    return {
        "k": k,
        "p": p,
        "devassy_l": devassy.value,
        "strlfc_l": strlfc.value,
        "converse_l": conv.value,
        "rate_devassy": devassy.rate,
        "rate_strlfc": strlfc.rate,
        "rate_converse": conv.rate,
        "cor2_margin": corollary2_margin(k, p),
        "heidarzadeh_l": heidarzadeh_reference(k, p).value,
    }
