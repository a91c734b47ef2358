from enum import Enum
from functools import partial
from typing import Any, Dict, Union

from click import secho


class LogLevel(Enum):
    TRACE = 0
    DEBUG = 1
    INFO = 2
    WARN = 3
    ERROR = 4


log_level = LogLevel.ERROR


def log(msg: Union[str | Dict[str, Any]], level: LogLevel = LogLevel.INFO) -> None:
    """
    Out currently emits to stderr via click, so CSV written to stdout with
    `--out -` is never interleaved with log lines.

    Args:
        msg (str | dict): the message, dicts are rendered as key=value pairs
        level (LogLevel): the level to emit the message at
    """
    global log_level
    level_colors = {
        LogLevel.TRACE: "cyan",
        LogLevel.DEBUG: "blue",
        LogLevel.INFO: "green",
        LogLevel.WARN: "yellow",
        LogLevel.ERROR: "red",
    }

    if isinstance(msg, dict):
        msg = format_fields(msg)

    if level.value >= log_level.value:
        secho(msg, fg=level_colors[level], err=True)
    return


def format_fields(fields: Dict[str, Any], prefix: str | None = None) -> str:
    """
    Render a dictionary as a single structured log line

    Args:
        fields (Dict[str, Any]): the values to render, in insertion order
        prefix (str, optional): free text placed before the fields

    Returns:
        str: e.g. "trial block done start=0 stop=4096"

    Raises:
        ValueError: If passed something that is not a dictionary
    """
    if not isinstance(fields, dict):
        raise ValueError("Fields must be a dictionary")

    parts = [] if prefix is None else [prefix]
    for k, v in fields.items():
        if isinstance(v, float):
            v = f"{v:.6g}"
        parts.append(f"{k}={v}")
    return " ".join(parts)


# Allow a non stuttering method when importing the library to print
msg = log

# these partials allow easy logging at a level via: log.<level>("message")
trace = partial(log, level=LogLevel["TRACE"])
debug = partial(log, level=LogLevel["DEBUG"])
info = partial(log, level=LogLevel["INFO"])
warn = partial(log, level=LogLevel["WARN"])
error = partial(log, level=LogLevel["ERROR"])
