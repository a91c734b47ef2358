from .linalg import (  # pragma: no cover  # noqa
    BitVector,
    InsertResult,
    RankTracker,
    insert_packed,
    matrix_rank,
    new_tracker,
    solve_packed,
)
