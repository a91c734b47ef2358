from typing import List

from pydantic import BaseModel

import vlsfbec.util.log as log
from vlsfbec import constants as const
from vlsfbec.analysis import (
    expected_stop_time_rlfc,
    full_rank_curve,
    objective,
    strlfc_achievability,
)
from vlsfbec.channel import ChannelParams
from vlsfbec.codec import DecodingSchedule, EncoderSpec
from vlsfbec.exceptions import AnalyticMismatch, ConfigError
from vlsfbec.gf2 import BitVector
from vlsfbec.montecarlo import (
    Comparison,
    SimReport,
    compare_error_rate,
    compare_full_rank,
    compare_to_analytic,
    estimate,
)
from vlsfbec.types import OutputFormat, Scheme
from vlsfbec.util import output

from .base import BaseCommand


class SimulationResult(BaseModel):
    """The JSON document written by the simulate command."""

    metadata: dict
    report: SimReport
    comparisons: List[Comparison]


def analytic_comparisons(report: SimReport, schedule: DecodingSchedule) -> List[Comparison]:
    """
    Check a report against the exact quantities of its code: the mean
    stopping time, the error rate, and P[S_n = k] at every observed time.
    """
    k, p = report.k, report.p
    scheme = report.scheme
    comparisons = []
    observed = sorted(report.rank_histograms)
    horizon = max([schedule.final or 0, *observed])
    curve = full_rank_curve(k, p, horizon, scheme)

    if schedule.is_unbounded:
        if scheme is Scheme.ST_RLFC:
            mean = strlfc_achievability(k, p).value
        else:
            mean = expected_stop_time_rlfc(k, p)
        comparisons.append(compare_to_analytic(report, mean))
        comparisons.append(
            Comparison(
                name="zero_error",
                measured=report.errors,
                analytic=0.0,
                z_score=0.0,
                passed=report.errors == 0,
                diagnostic=None if report.errors == 0 else f"{report.errors} decoding errors",
            )
        )
    else:
        comparisons.append(compare_to_analytic(report, objective(schedule.times, curve), name="N"))
        comparisons.append(compare_error_rate(report, 1.0 - float(curve[schedule.final])))
    for n in observed:
        comparisons.append(compare_full_rank(report, n, float(curve[n])))
    return comparisons


class SimulateCommand(BaseCommand):
    """
    Monte Carlo run of one code and schedule, checked against the exact
    values. Any failed check makes the command exit with the mismatch code
    after the outputs are written.
    """

    name = "simulate"
    header = ("name", "measured", "analytic", "z_score", "lower", "upper", "status")

    def exec(self) -> None:
        opts = self.options
        root = self.root_options
        if root.format is OutputFormat.SVG:
            raise ConfigError("simulate writes csv or json, not svg")

        spec = EncoderSpec(k=opts.k, scheme=opts.scheme)
        params = ChannelParams(p=opts.p, seed=root.seed)
        schedule = DecodingSchedule(times=opts.times)
        message = BitVector.from_bits([int(c) for c in opts.message]) if opts.message else None
        report = estimate(
            spec,
            params,
            schedule,
            trials=opts.trials,
            seed=root.seed,
            message_policy=opts.message_policy,
            message=message,
            workers=root.workers,
            observe_times=opts.observe_times,
        )

        if report.trials >= const.MIN_COMPARE_TRIALS:
            comparisons = analytic_comparisons(report, schedule)
        else:
            log.warn(
                f"{report.trials} trials is below {const.MIN_COMPARE_TRIALS}, skipping analytic checks"
            )
            comparisons = []

        metadata = self.metadata()
        metadata.update(
            {
                "k": report.k,
                "p": report.p,
                "scheme": str(report.scheme),
                "schedule": report.schedule,
                "trials": report.trials,
                "mean_tau": report.mean_tau,
                "stderr_tau": report.stderr_tau,
                "error_rate": report.error_rate,
                "undetected_errors": report.undetected_errors,
            }
        )
        result = SimulationResult(metadata=metadata, report=report, comparisons=comparisons)
        if root.format is OutputFormat.JSON:
            output.write_json(root.out, result)
        else:
            output.write_csv(root.out, self.header, [_comparison_row(c) for c in comparisons], metadata)
            if root.out != output.STDOUT:
                output.write_json(_json_path(root.out), result)
            else:
                log.warn(
                    "csv on stdout has no file to put the json report next to, "
                    "use --format json or --out"
                )

        failed = [c for c in comparisons if not c.passed]
        for c in failed:
            log.error(f"{c.name}: {c.diagnostic}")
        if failed:
            raise AnalyticMismatch(
                f"{len(failed)} of {len(comparisons)} analytic checks failed", comparisons=failed
            )
        log.info(f"all {len(comparisons)} analytic checks passed")


def _comparison_row(c: Comparison) -> dict:
    lower, upper = c.interval if c.interval else (None, None)
    return {
        "name": c.name,
        "measured": c.measured,
        "analytic": c.analytic,
        "z_score": c.z_score,
        "lower": lower,
        "upper": upper,
        "status": c.status,
    }


def _json_path(csv_path: str) -> str:
    if csv_path.endswith(".csv"):
        return csv_path[: -len(".csv")] + ".json"
    return csv_path + ".json"
