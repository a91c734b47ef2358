from vlsfbec.analysis import backoff_bounds

from .base import BaseCommand


class BackoffCommand(BaseCommand):
    """Backoff from capacity, 1 - R/C, at a fixed k over a grid of p."""

    name = "backoff"
    header = ("p", "backoff_devassy", "backoff_strlfc")
    labels = {
        "backoff_devassy": "RLFC backoff upper bound, independent of p",
        "backoff_strlfc": "ST-RLFC backoff, increasing in p",
    }
    plot = {"x": "p", "ys": ["backoff_devassy", "backoff_strlfc"]}

    def metadata(self):
        meta = super().metadata()
        meta["k"] = self.options.k
        return meta

    def rows(self):
        k = self.options.k
        for p in self.options.ps:
            b = backoff_bounds(k, p)
            yield {"p": p, "backoff_devassy": b.devassy, "backoff_strlfc": b.strlfc}
