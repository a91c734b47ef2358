from enum import Enum


class Scheme(Enum):
    """
    Encoders available to a trial
    """

    ST_RLFC = "st_rlfc"
    PURE_RLFC = "pure_rlfc"

    def __str__(self):
        return self.value


class MessagePolicy(Enum):
    """
    How the transmitted message is chosen for each trial
    """

    ZERO = "zero"
    FIXED = "fixed"
    RANDOM = "random"

    def __str__(self):
        return self.value


class SolverMethod(Enum):
    """
    Strategies for choosing decoding times
    """

    EXHAUSTIVE = "exhaustive"
    DP = "dp"
    HEURISTIC = "heuristic"

    def __str__(self):
        return self.value


class OutputFormat(Enum):
    CSV = "csv"
    SVG = "svg"
    JSON = "json"

    def __str__(self):
        return self.value
