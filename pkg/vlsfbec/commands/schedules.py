from vlsfbec.analysis import rate_vs_m_sweep

from .base import BaseCommand


class SchedulesCommand(BaseCommand):
    """
    Optimal decoding times for every m and k, with the expected blocklength,
    the rate, the error bound, and the unbounded-schedule reference adjusted
    for the target error. Infeasible (m, k) pairs are left out.
    """

    name = "schedules"
    header = (
        "m",
        "k",
        "schedule",
        "N",
        "rate",
        "error_bound",
        "method",
        "reference_l",
        "reference_rate",
    )
    labels = {
        "N": "expected blocklength of the schedule",
        "error_bound": "1 - P[S_{n_m} = k]",
        "reference_l": "ST-RLFC E[tau] scaled by (1 - delta)",
    }
    plot = {"x": "k", "ys": ["rate"], "group": "m"}

    def metadata(self):
        meta = super().metadata()
        meta["p"] = self.options.p
        meta["delta"] = self.options.delta
        return meta

    def rows(self):
        opts = self.options
        for row in rate_vs_m_sweep(opts.ks, opts.p, opts.ms, opts.delta, opts.method):
            if not row.feasible:
                continue
            s = row.solution
            yield {
                "m": row.m,
                "k": row.k,
                "schedule": " ".join(str(n) for n in s.schedule),
                "N": s.objective,
                "rate": s.rate,
                "error_bound": s.error_bound,
                "method": str(s.method),
                "reference_l": row.reference_l,
                "reference_rate": row.reference_rate,
            }
