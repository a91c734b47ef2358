"""
Exact linear algebra over GF(2).

Vectors are packed into Python integers, bit ``i`` (1-based) of a vector
lives at bit position ``i - 1`` of the integer. XOR of two vectors is a single
integer XOR and inner products are popcounts, so every elimination step is a
handful of word operations regardless of ``k``.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

import vlsfbec.util.log as log
from vlsfbec.exceptions import DimensionError, RankDeficientError


@dataclass(frozen=True, slots=True)
class BitVector:
    """A fixed length vector over GF(2)."""

    k: int
    bits: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise DimensionError(f"vector length must be positive, got {self.k}")
        if self.bits < 0 or self.bits >> self.k:
            raise DimensionError(f"payload {self.bits:#x} does not fit in {self.k} bits")

    @classmethod
    def zero(cls, k: int) -> "BitVector":
        return cls(k, 0)

    @classmethod
    def unit(cls, i: int, k: int) -> "BitVector":
        """The natural base vector e_i, i in [1, k]."""
        if not 1 <= i <= k:
            raise DimensionError(f"index {i} outside [1, {k}]")
        return cls(k, 1 << (i - 1))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        """Build a vector from (b_1, ..., b_k)."""
        packed = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {i + 1} is {b}, must be 0 or 1")
            packed |= b << i
        return cls(len(bits), packed)

    def to_bits(self) -> Tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.k))

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.k:
            raise IndexError(f"index {i} outside [1, {self.k}]")
        return (self.bits >> (i - 1)) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.k, self.bits ^ other.bits)

    def dot(self, other: "BitVector") -> int:
        """GF(2) inner product."""
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_bits())

    def _check(self, other: "BitVector") -> None:
        if other.k != self.k:
            raise DimensionError(f"length mismatch: {self.k} != {other.k}")


Basis = Dict[int, Tuple[int, int]]


def insert_packed(basis: Basis, v: int, s: int) -> bool:
    """
    Reduce the packed column v, carrying the symbol s, against an echelon
    basis keyed by pivot and store it if it is independent.

    Returns:
        bool: True if the basis grew
    """
    while v:
        pivot = v.bit_length() - 1
        row = basis.get(pivot)
        if row is None:
            basis[pivot] = (v, s)
            return True
        v ^= row[0]
        s ^= row[1]
    # the column reduced to zero, so s == 0 for a consistent channel
    return False


def solve_packed(basis: Basis, k: int) -> int:
    """Back-substitution over a full echelon basis, the message packed."""
    b = 0
    # a stored column only has bits at or below its pivot
    for pivot in range(k):
        v, s = basis[pivot]
        rest = (v ^ (1 << pivot)) & b
        b |= (s ^ (rest.bit_count() & 1)) << pivot
    return b


class InsertResult(NamedTuple):
    rank_increased: bool
    new_rank: int


class RankTracker:
    """
    Online row-echelon state over received generator columns.

    Each accepted column is stored under its pivot, the position of its
    highest set bit, together with the received symbol carried through the
    same XORs. A pivot is never shared by two stored columns, so the basis is
    in echelon form at all times and ``solve_message`` is back-substitution.
    """

    def __init__(self, k: int) -> None:
        if k < 1:
            raise DimensionError(f"tracker dimension must be positive, got {k}")
        self._k = k
        self._basis: Basis = {}
        self._received: List[Tuple[int, BitVector, int]] = []
        self._time = 0

    @property
    def k(self) -> int:
        return self._k

    @property
    def rank(self) -> int:
        return len(self._basis)

    @property
    def time(self) -> int:
        """Number of columns inserted so far, erasures included."""
        return self._time

    @property
    def received(self) -> List[Tuple[int, BitVector, int]]:
        """(time index, column, symbol) for every unerased reception."""
        return list(self._received)

    def is_full_rank(self) -> bool:
        return len(self._basis) == self._k

    def insert_column(self, g: BitVector, y: int = 0) -> InsertResult:
        """
        Add the column of one channel use.

        Args:
            g (BitVector): the generator column, the zero vector for an erasure
            y (int): the received bit

        Returns:
            InsertResult: whether the rank grew, and the rank afterwards

        Raises:
            DimensionError: if g does not have length k
        """
        if g.k != self._k:
            raise DimensionError(f"column has length {g.k}, tracker expects {self._k}")
        if y not in (0, 1):
            raise ValueError(f"received symbol must be 0 or 1, got {y}")
        self._time += 1
        if g.bits == 0:
            return InsertResult(False, len(self._basis))

        self._received.append((self._time, g, y))
        grew = insert_packed(self._basis, g.bits, y)
        return InsertResult(grew, len(self._basis))

    def insert_erasure(self) -> InsertResult:
        """Equivalent to inserting the zero column."""
        return self.insert_column(BitVector.zero(self._k), 0)

    def solve_message(self) -> BitVector:
        """
        Recover b from the recorded receptions.

        Returns:
            BitVector: the unique b with g_n . b = y_n for every reception

        Raises:
            RankDeficientError: if fewer than k independent columns were received
        """
        if len(self._basis) < self._k:
            raise RankDeficientError(len(self._basis), self._k)
        return BitVector(self._k, solve_packed(self._basis, self._k))

    def copy(self) -> "RankTracker":
        other = RankTracker(self._k)
        other._basis = dict(self._basis)
        other._received = list(self._received)
        other._time = self._time
        return other

    def __repr__(self) -> str:
        return f"RankTracker(k={self._k}, rank={self.rank}, time={self._time})"


def new_tracker(k: int) -> RankTracker:
    """Create an empty tracker for k-bit messages."""
    log.trace(f"new rank tracker k={k}")
    return RankTracker(k)


def matrix_rank(columns: Iterable[BitVector], k: int) -> int:
    """
    Rank of the k x n matrix whose columns are given, by offline Gaussian
    elimination over a dense 0/1 array.

    Args:
        columns (Iterable[BitVector]): the columns, each of length k
        k (int): the number of rows

    Returns:
        int: the GF(2) rank
    """
    cols = list(columns)
    for c in cols:
        if c.k != k:
            raise DimensionError(f"column has length {c.k}, expected {k}")
    if not cols:
        return 0
    a = np.array([c.to_bits() for c in cols], dtype=np.uint8).T
    rows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == rows:
            break
        candidates = np.nonzero(a[rank:, col])[0]
        if candidates.size == 0:
            continue
        pivot = rank + candidates[0]
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        below = np.nonzero(a[rank + 1 :, col])[0] + rank + 1  # noqa: E203
        a[below] ^= a[rank]
        rank += 1
    return rank
