import os
from typing import Any, List, Optional

from pydantic import ConfigDict, Field, field_validator, model_validator

import vlsfbec.util.log as log
from vlsfbec import constants as const
from vlsfbec.types import FreezableBaseModel, MessagePolicy, OutputFormat, Scheme, SolverMethod
from vlsfbec.util.cli import parse_float_grid, parse_int_list, parse_int_range


def _enum_value(enum_cls, value: Any, what: str):
    """Convert a string to the enum member with that value, case-insensitive."""
    if isinstance(value, enum_cls):
        return value
    try:
        return enum_cls(str(value).lower())
    except ValueError:
        raise ValueError(
            f"{what} {value} is not supported, must be one of {' | '.join(e.value for e in enum_cls)}"
        )


def _int_range_str(value: Any) -> Optional[str]:
    """Normalise an int, [a, b] or 'A:B' to 'A:B' and check it parses."""
    if value is None:
        return None
    if isinstance(value, int):
        value = f"{value}:{value}"
    elif isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"range must have two ends, got {value}")
        value = f"{value[0]}:{value[1]}"
    ks = parse_int_range(value)
    if ks[0] < 1:
        raise ValueError("message lengths must be positive")
    return str(value).strip()


def _int_list_str(value: Any, what: str) -> Optional[str]:
    """Normalise 1,2,4 or [1, 2, 4] to '1,2,4' with positive values."""
    if value is None:
        return None
    if isinstance(value, int):
        value = [value]
    items = parse_int_list(value)
    if any(i < 1 for i in items):
        raise ValueError(f"{what} must be positive")
    return ",".join(str(i) for i in items)


def _check_p(p: Optional[float]) -> Optional[float]:
    if p is not None and not 0.0 <= p < 1.0:
        raise ValueError(f"p={p} outside [0, 1)")
    return p


def _check_delta(delta: float) -> float:
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta={delta} outside (0, 1)")
    return delta


def _p_grid_str(value: Any) -> Optional[str]:
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        value = ":".join(str(v) for v in value)
    for p in parse_float_grid(str(value)):
        _check_p(p)
    return str(value).strip()


class CLIOptionsRoot(FreezableBaseModel):
    """
    CLIOptionsRoot is a Pydantic model that represents the root options for the CLI.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    config_file: Optional[str] = Field(
        None,
        json_schema_extra={"env": "VLSF_CONFIG_FILE"},
        description=f"Path to a YAML configuration file, {os.path.basename(const.DEFAULT_CONFIG)} in the working directory is used if present",
    )
    config_var: Optional[List[str]] = Field(
        [],
        description='key=value to be supplied as jinja variables in config_file under "var" dictionary, can be specified multiple times',
    )
    log_level: str = Field(
        "WARN",
        description="The level to use for logging/output",
        json_schema_extra={"env": "VLSF_LOG_LEVEL"},
    )
    seed: int = Field(
        const.DEFAULT_SEED,
        json_schema_extra={"env": "VLSF_SEED"},
        description="Master seed for every random stream",
    )
    out: str = Field(
        "-",
        json_schema_extra={"env": "VLSF_OUT", "short_arg": "o"},
        description="Output file, - writes CSV/JSON to stdout",
    )
    format: OutputFormat = Field(
        OutputFormat.CSV,
        json_schema_extra={"env": "VLSF_FORMAT"},
        description="Output format. One of: csv, svg, json",
    )
    workers: int = Field(
        1,
        json_schema_extra={"env": "VLSF_WORKERS"},
        description="Processes used by simulations",
    )

    @field_validator("config_file")
    @classmethod
    def validate_config_file(cls, fpath: Optional[str]) -> Optional[str]:
        """Validates the config file exists, and is readable

        Args:
            fpath (str): The path to the config file

        Returns:
            str: The absolute path to the config file, or None when no file is
                given and the default one does not exist

        Raises:
            ValueError: If the file does not exist or is not readable
        """
        if fpath is None:
            return const.DEFAULT_CONFIG if os.path.isfile(const.DEFAULT_CONFIG) else None
        if not os.path.isabs(fpath):
            fpath = os.path.abspath(fpath)
        if os.path.isdir(fpath):
            raise ValueError(f"Config file {fpath} is a directory!")
        if not os.path.isfile(fpath):
            raise ValueError(f"Config file {fpath} does not exist!")
        if not os.access(fpath, os.R_OK):
            raise ValueError(f"Config file {fpath} is not readable!")
        return fpath

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, level: str) -> str:
        """Validate the log level.

        Args:
            level(str): The log level.

        Returns:
            The normalized/validated log level.

        Raises:
            ValueError: If the log level is invalid.
        """
        try:
            _ = log.LogLevel[level.upper()]
            return level.upper()
        except KeyError:
            raise ValueError("Invalid log level")

    @field_validator("seed")
    @classmethod
    def validate_seed(cls, seed: int) -> int:
        if not 0 <= seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        return seed

    @field_validator("format", mode="before")
    @classmethod
    def validate_format(cls, fmt: Any) -> OutputFormat:
        return _enum_value(OutputFormat, fmt, "Format")

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, workers: int) -> int:
        if workers < 1:
            raise ValueError("workers must be at least 1")
        return workers

    @model_validator(mode="after")
    def validate_svg_destination(self):
        if self.format is OutputFormat.SVG and self.out == "-":
            raise ValueError("svg output needs a file path in --out")
        return self


class CLIOptionsBounds(FreezableBaseModel):
    """
    CLIOptionsBounds represents the options for the bounds command.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    k: Optional[int] = Field(None, description="Single message length, takes precedence over --k-range")
    k_range: Optional[str] = Field("1:22", description="Inclusive message length range A:B")
    p: Optional[float] = Field(None, description="Single erasure probability, takes precedence over --p-grid")
    p_grid: Optional[str] = Field(
        str(const.DEFAULT_P), description="Erasure probability grid A:B:step"
    )

    @field_validator("k_range", mode="before")
    @classmethod
    def validate_k_range(cls, k_range: Any) -> Optional[str]:
        return _int_range_str(k_range)

    @field_validator("p_grid", mode="before")
    @classmethod
    def validate_p_grid(cls, p_grid: Any) -> Optional[str]:
        return _p_grid_str(p_grid)

    @field_validator("k")
    @classmethod
    def validate_k(cls, k: Optional[int]) -> Optional[int]:
        if k is not None and k < 1:
            raise ValueError("k must be positive")
        return k

    @field_validator("p")
    @classmethod
    def validate_p(cls, p: Optional[float]) -> Optional[float]:
        return _check_p(p)

    @property
    def ks(self) -> List[int]:
        return [self.k] if self.k is not None else parse_int_range(self.k_range)

    @property
    def ps(self) -> List[float]:
        return [self.p] if self.p is not None else parse_float_grid(self.p_grid)


class CLIOptionsBackoff(FreezableBaseModel):
    """
    CLIOptionsBackoff represents the options for the backoff command.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    k: int = Field(3, description="Message length")
    p_grid: str = Field("0.01:0.99:0.01", description="Erasure probability grid A:B:step")

    @field_validator("k")
    @classmethod
    def validate_k(cls, k: int) -> int:
        if k < 1:
            raise ValueError("k must be positive")
        return k

    @field_validator("p_grid", mode="before")
    @classmethod
    def validate_p_grid(cls, p_grid: Any) -> str:
        if p_grid is None:
            raise ValueError("a p grid is required")
        return _p_grid_str(p_grid)

    @property
    def ps(self) -> List[float]:
        return parse_float_grid(self.p_grid)


class CLIOptionsRankgap(FreezableBaseModel):
    """
    CLIOptionsRankgap represents the options for the rankgap command.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    k_range: str = Field("1:100", description="Inclusive message length range A:B")
    p: float = Field(const.DEFAULT_P, description="Erasure probability")

    @field_validator("k_range", mode="before")
    @classmethod
    def validate_k_range(cls, k_range: Any) -> str:
        if k_range is None:
            raise ValueError("a k range is required")
        return _int_range_str(k_range)

    @field_validator("p")
    @classmethod
    def validate_p(cls, p: float) -> float:
        return _check_p(p)

    @property
    def ks(self) -> List[int]:
        return parse_int_range(self.k_range)


class CLIOptionsSchedules(FreezableBaseModel):
    """
    CLIOptionsSchedules represents the options for the schedules command.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    k_range: str = Field("1:20", description="Inclusive message length range A:B")
    p: float = Field(0.5, description="Erasure probability")
    m_list: str = Field(
        ",".join(str(m) for m in const.DEFAULT_M_LIST),
        description="Numbers of decoding times, comma separated",
    )
    delta: float = Field(const.DEFAULT_DELTA, description="Target error probability")
    method: SolverMethod = Field(
        SolverMethod.DP, description="Schedule solver. One of: dp, exhaustive, heuristic"
    )

    @field_validator("k_range", mode="before")
    @classmethod
    def validate_k_range(cls, k_range: Any) -> str:
        if k_range is None:
            raise ValueError("a k range is required")
        return _int_range_str(k_range)

    @field_validator("m_list", mode="before")
    @classmethod
    def validate_m_list(cls, m_list: Any) -> str:
        if m_list is None:
            raise ValueError("an m list is required")
        return _int_list_str(m_list, "numbers of decoding times")

    @field_validator("p")
    @classmethod
    def validate_p(cls, p: float) -> float:
        return _check_p(p)

    @field_validator("delta")
    @classmethod
    def validate_delta(cls, delta: float) -> float:
        return _check_delta(delta)

    @field_validator("method", mode="before")
    @classmethod
    def validate_method(cls, method: Any) -> SolverMethod:
        return _enum_value(SolverMethod, method, "Method")

    @property
    def ks(self) -> List[int]:
        return parse_int_range(self.k_range)

    @property
    def ms(self) -> List[int]:
        return parse_int_list(self.m_list)


class CLIOptionsSimulate(FreezableBaseModel):
    """
    CLIOptionsSimulate represents the options for the simulate command.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    k: int = Field(3, description="Message length")
    p: float = Field(0.5, description="Erasure probability")
    scheme: Scheme = Field(Scheme.ST_RLFC, description="Encoder. One of: st_rlfc, pure_rlfc")
    schedule: str = Field(
        "unbounded", description="Decoding times, comma separated, or unbounded"
    )
    trials: int = Field(
        const.DEFAULT_TRIALS,
        json_schema_extra={"env": "VLSF_TRIALS"},
        description="Number of simulated transmissions",
    )
    message_policy: MessagePolicy = Field(
        MessagePolicy.RANDOM, description="Message per trial. One of: zero, fixed, random"
    )
    message: Optional[str] = Field(
        None, description="Bits b_1..b_k of the fixed message, e.g. 101"
    )
    observe: Optional[str] = Field(
        None, description="Extra times at which to histogram the rank, comma separated"
    )

    @field_validator("k")
    @classmethod
    def validate_k(cls, k: int) -> int:
        if k < 1:
            raise ValueError("k must be positive")
        return k

    @field_validator("p")
    @classmethod
    def validate_p(cls, p: float) -> float:
        return _check_p(p)

    @field_validator("scheme", mode="before")
    @classmethod
    def validate_scheme(cls, scheme: Any) -> Scheme:
        return _enum_value(Scheme, scheme, "Scheme")

    @field_validator("message_policy", mode="before")
    @classmethod
    def validate_message_policy(cls, policy: Any) -> MessagePolicy:
        return _enum_value(MessagePolicy, policy, "Message policy")

    @field_validator("schedule", mode="before")
    @classmethod
    def validate_schedule(cls, schedule: Any) -> str:
        if schedule is None or str(schedule).strip().lower() == "unbounded":
            return "unbounded"
        times = parse_int_list(_int_list_str(schedule, "decoding times"))
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("decoding times must be strictly increasing")
        return ",".join(str(t) for t in times)

    @field_validator("trials")
    @classmethod
    def validate_trials(cls, trials: int) -> int:
        if trials < 1:
            raise ValueError("trials must be positive")
        return trials

    @field_validator("message")
    @classmethod
    def validate_message(cls, message: Optional[str]) -> Optional[str]:
        if message is not None and (not message or set(message) - {"0", "1"}):
            raise ValueError("message must be a string of 0 and 1")
        return message

    @field_validator("observe", mode="before")
    @classmethod
    def validate_observe(cls, observe: Any) -> Optional[str]:
        return _int_list_str(observe, "observation times")

    @model_validator(mode="after")
    def validate_message_matches(self):
        if self.message_policy is MessagePolicy.FIXED:
            if self.message is None:
                raise ValueError("the fixed message policy needs --message")
            if len(self.message) != self.k:
                raise ValueError(f"message has {len(self.message)} bits, k is {self.k}")
        return self

    @property
    def times(self) -> Optional[List[int]]:
        return None if self.schedule == "unbounded" else parse_int_list(self.schedule)

    @property
    def observe_times(self) -> List[int]:
        return [] if self.observe is None else parse_int_list(self.observe)


class CLIOptionsRender(FreezableBaseModel):
    """
    CLIOptionsRender represents the options for the render command.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    source: str = Field(..., description="CSV dataset written by another command")
    x: Optional[str] = Field(None, description="Column for the horizontal axis")
    y: Optional[List[str]] = Field([], description="Columns to plot, can be specified multiple times")
    group: Optional[str] = Field(None, description="Column that splits rows into separate lines")
    logy: bool = Field(False, description="Logarithmic vertical axis")

    @field_validator("source")
    @classmethod
    def validate_source(cls, fpath: str) -> str:
        if not os.path.isfile(fpath):
            raise ValueError(f"CSV file {fpath} does not exist!")
        return os.path.abspath(fpath)
