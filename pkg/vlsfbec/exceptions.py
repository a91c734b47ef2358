class VLSFException(Exception):
    """
    All exceptions raised by vlsfbec should inherit from this class.
    """

    pass


class DimensionError(VLSFException):
    """
    Exception is raised when a vector does not match the dimension of the
    tracker, message or encoder it is used with.
    """

    pass


class RankDeficientError(VLSFException):
    """
    Exception is raised when a message is requested from a rank tracker
    that has not reached full rank.
    """

    def __init__(self, rank: int, k: int) -> None:
        super().__init__(f"generator matrix has rank {rank}, need {k}")
        self.rank = rank
        self.k = k


class ChannelError(VLSFException):
    """
    Exception is raised for channel configurations that cannot be simulated,
    e.g. an unbounded schedule over a channel that erases everything.
    """

    pass


class BoundError(VLSFException):
    """
    Exception is raised when a bound is evaluated outside of its domain.
    """

    pass


class ScheduleError(VLSFException):
    """
    Exception is raised when a decoding schedule is malformed.
    """

    pass


class ScheduleInfeasibleError(ScheduleError):
    """
    Exception is raised when no schedule of the requested length can meet
    the error target.
    """

    pass


class SimulationError(VLSFException):
    """
    Exception is raised when a simulation request cannot be satisfied.
    """

    pass


class AnalyticMismatch(VLSFException):
    """
    Exception is raised when a simulation disagrees with its analytic value.
    """

    def __init__(self, message: str, comparisons=None) -> None:
        super().__init__(message)
        self.comparisons = comparisons or []


class ConfigError(VLSFException):
    """
    Exception is raised when the configuration file cannot be loaded or
    contains unknown keys.
    """

    pass


class OutputError(VLSFException):
    # add custom "help" parameter to the exception
    def __init__(self, message, help=None):
        super().__init__(message)
        self._help = help

    @property
    def help(self):
        if self._help is None:
            return "No help available"
        return self._help


class FrozenInstanceError(VLSFException):
    """
    This is an exception that indicates an attempt to modify a frozen instance.
    """

    def __str__(self) -> str:
        return "Cannot modify a frozen instance."
