from .engine import estimate, run_block  # noqa
from .model import BlockStats, Comparison, SimReport  # noqa
from .stats import (  # noqa
    clopper_pearson,
    compare_error_rate,
    compare_full_rank,
    compare_proportion,
    compare_to_analytic,
    sample_moments,
)
