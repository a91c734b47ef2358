import math
from typing import Tuple

from scipy.stats import beta

import vlsfbec.util.log as log
from vlsfbec import constants as const
from vlsfbec.exceptions import SimulationError

from .model import Comparison, SimReport


def sample_moments(trials: int, total: int, total_sq: int) -> Tuple[float, float]:
    """
    Mean and standard error from integer sums.

    The numerator n*sum(x^2) - sum(x)^2 is formed in exact integer arithmetic
    so a constant sample has a standard error of exactly zero.
    """
    if trials < 1:
        raise SimulationError("no trials to summarise")
    mean = total / trials
    if trials == 1:
        return mean, 0.0
    spread = trials * total_sq - total * total
    variance = spread / (trials * (trials - 1))
    return mean, math.sqrt(variance / trials)


def clopper_pearson(
    successes: int, trials: int, confidence: float = const.CONFIDENCE_LEVEL
) -> Tuple[float, float]:
    """
    Exact binomial interval for a proportion.

    Args:
        successes (int): number of events observed
        trials (int): number of trials
        confidence (float): two sided coverage, e.g. 0.95

    Returns:
        Tuple[float, float]: the lower and upper limits
    """
    if trials < 1 or not 0 <= successes <= trials:
        raise SimulationError(f"invalid proportion {successes}/{trials}")
    if not 0.0 < confidence < 1.0:
        raise SimulationError(f"confidence {confidence} outside (0, 1)")
    tail = (1.0 - confidence) / 2.0
    lower = 0.0 if successes == 0 else float(beta.ppf(tail, successes, trials - successes + 1))
    upper = 1.0 if successes == trials else float(beta.ppf(1.0 - tail, successes + 1, trials - successes))
    return lower, upper


def _require_trials(report: SimReport) -> None:
    if report.trials < const.MIN_COMPARE_TRIALS:
        raise SimulationError(
            f"comparison needs at least {const.MIN_COMPARE_TRIALS} trials, report has {report.trials}"
        )


def compare_to_analytic(
    report: SimReport,
    analytic: float,
    name: str = "mean_tau",
    threshold: float = const.Z_THRESHOLD,
) -> Comparison:
    """
    z test of the sample mean of the stopping time against an exact value.

    Raises:
        SimulationError: if the report has fewer than 1000 trials
    """
    _require_trials(report)
    mean, stderr = report.mean_tau, report.stderr_tau
    diagnostic = None
    if stderr == 0.0:
        if math.isclose(mean, analytic, rel_tol=1e-12, abs_tol=1e-12):
            z = 0.0
        else:
            z = math.copysign(math.inf, mean - analytic)
            diagnostic = f"every trial stopped at {mean:g} but the exact mean is {analytic:.12g}"
    else:
        z = (mean - analytic) / stderr
    passed = abs(z) <= threshold
    if not passed and diagnostic is None:
        diagnostic = f"|z|={abs(z):.3g} exceeds {threshold:g}"
    log.debug({"compare": name, "measured": mean, "analytic": analytic, "z": z})
    return Comparison(
        name=name, measured=mean, analytic=analytic, z_score=z, passed=passed, diagnostic=diagnostic
    )


def compare_proportion(
    name: str,
    successes: int,
    trials: int,
    analytic: float,
    confidence: float = const.CHECK_CONFIDENCE,
) -> Comparison:
    """
    Check an exact probability against the Clopper-Pearson interval of its
    empirical counterpart. The z score uses the analytic variance and is
    reported for information only.
    """
    lower, upper = clopper_pearson(successes, trials, confidence)
    measured = successes / trials
    sd = math.sqrt(analytic * (1.0 - analytic) / trials)
    if sd > 0.0:
        z = (measured - analytic) / sd
    else:
        z = 0.0 if measured == analytic else math.inf
    passed = lower <= analytic <= upper
    diagnostic = None
    if not passed:
        diagnostic = f"{analytic:.12g} outside [{lower:.6g}, {upper:.6g}] at {confidence:g}"
    return Comparison(
        name=name,
        measured=measured,
        analytic=analytic,
        z_score=z,
        passed=passed,
        interval=(lower, upper),
        diagnostic=diagnostic,
    )


def compare_full_rank(
    report: SimReport, n: int, analytic: float, confidence: float = const.CHECK_CONFIDENCE
) -> Comparison:
    """Empirical P[S_n = k] against the exact value."""
    _require_trials(report)
    if n not in report.rank_histograms:
        raise SimulationError(f"rank was not observed at n={n}")
    return compare_proportion(
        f"full_rank@{n}", report.full_rank_count(n), report.trials, analytic, confidence
    )


def compare_error_rate(
    report: SimReport, analytic: float, confidence: float = const.CHECK_CONFIDENCE
) -> Comparison:
    """Empirical decoding error rate against the exact error bound."""
    _require_trials(report)
    return compare_proportion("error_rate", report.errors, report.trials, analytic, confidence)
