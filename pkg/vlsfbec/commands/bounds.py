from vlsfbec.analysis import bounds_row

from .base import BaseCommand


class BoundsCommand(BaseCommand):
    """
    Expected blocklength bounds for every (k, p): the fountain code
    achievability, the systematic code achievability (exact), the converse
    at M = 2^k and the (k + c)/C reference, with rates and the gap between
    the two achievability bounds.
    """

    name = "bounds"
    header = (
        "k",
        "p",
        "devassy_l",
        "strlfc_l",
        "converse_l",
        "rate_devassy",
        "rate_strlfc",
        "rate_converse",
        "cor2_margin",
        "heidarzadeh_l",
    )
    labels = {
        "devassy_l": "Thm 1, RLFC achievability (k + sum (2^i-1)/(2^k-2^i))/C",
        "strlfc_l": "Thm 3, ST-RLFC achievability, exact E[tau]",
        "converse_l": "Thm 2, converse at M = 2^k",
        "cor2_margin": "Cor 2, devassy_l - strlfc_l scaled by C, nonnegative",
        "heidarzadeh_l": "reference (k + 1.6067)/C of the random linear code construction",
    }
    plot = {"x": "k", "ys": ["rate_devassy", "rate_strlfc", "rate_converse"], "group": "p"}

    def rows(self):
        for p in self.options.ps:
            for k in self.options.ks:
                yield bounds_row(k, p)
