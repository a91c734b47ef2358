from vlsfbec.analysis import expected_rank_gap

from .base import BaseCommand


class RankgapCommand(BaseCommand):
    """E[S_k] of the systematic encoder minus that of the pure fountain encoder."""

    name = "rankgap"
    header = ("k", "gap")
    labels = {"gap": "E[S_k ST-RLFC] - E[S_k RLFC]"}
    plot = {"x": "k", "ys": ["gap"]}

    def metadata(self):
        meta = super().metadata()
        meta["p"] = self.options.p
        return meta

    def rows(self):
        p = self.options.p
        for k in self.options.ks:
            yield {"k": k, "gap": expected_rank_gap(k, p)}
