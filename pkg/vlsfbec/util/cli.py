import typing as t
from enum import Enum

import click
from pydantic import BaseModel, ValidationError
from pydantic.fields import PydanticUndefined

import vlsfbec.util.log as log
from vlsfbec import constants as const


def handle_option_error(e: ValidationError) -> None:
    """Handle a Pydantic validation error.

    Rather than raising a click.BadOptionUsage, this function will capture and report
    all validation errors, instead of just the first one encountered.

    Args:
        e: Pydantic validation error.
    """
    error_message = ["options error(s):"]
    for error in e.errors():
        loc = error["loc"][0] if error["loc"] else "options"
        # pydantic adds "Value error," to the beginning of custom messages
        msg = error["msg"]
        if msg.startswith("Value error,"):
            msg = msg.split(",", 1)[1].strip()
        error_message.append(f"{loc}: {msg}")

    log.error("{}".format("\n  ".join(error_message)))
    click.get_current_context().exit(const.EXIT_VALIDATION)


def handle_config_error(e: ValidationError) -> None:
    """Handle a Pydantic validation error raised while applying the config file.

    Args:
        e: Pydantic validation error.
    """
    if e.error_count() == 1:
        error_message = ["config error:"]
    else:
        error_message = ["config errors:"]

    for error in e.errors():
        error_message.append("  Details:")
        error_message.append(f"    Error Type: {error['type']}")
        error_message.append(f"    Error Loc: {error['loc']}")
        error_message.append(f"    Error Msg: {error['msg']}")
        error_message.append(f"    Input Value: {error['input']}")

    log.error("{}".format("\n  ".join(error_message)))
    click.get_current_context().exit(const.EXIT_VALIDATION)


def pydantic_to_click(pydantic_model: t.Type[BaseModel]) -> click.Command:
    """Convert a Pydantic model to a set of Click options.

    Enums are exposed as strings and validated by the model. Range and list
    options (``--k-range 1:22``, ``--m-list 1,2,4``) are plain strings that the
    model parses.

    Args:
        pydantic_model: Pydantic model to convert.

    Returns:
        Click command.
    """

    def decorator(func):
        model_types = t.get_type_hints(pydantic_model)
        for fname, fdata in reversed(sorted(pydantic_model.model_fields.items())):
            default = fdata.default
            multiple = False
            has_extra = fdata.json_schema_extra is not None

            c_option_kwargs = {
                "help": fdata.description,
                "required": fdata.is_required(),
            }

            if has_extra and fdata.json_schema_extra.get("env"):
                c_option_kwargs["envvar"] = fdata.json_schema_extra["env"]
                c_option_kwargs["show_envvar"] = True

            if model_types[fname] in [str, t.Optional[str]]:
                option_type = click.STRING
            elif model_types[fname] in [int, t.Optional[int]]:
                option_type = click.INT
            elif model_types[fname] in [float, t.Optional[float]]:
                option_type = click.FLOAT
            elif model_types[fname] in [bool, t.Optional[bool]]:
                option_type = click.BOOL
            elif model_types[fname] in [t.List[str], t.Optional[t.List[str]]]:
                option_type = click.STRING
                multiple = True
                if default is PydanticUndefined or default is None:
                    default = []
            elif isinstance(model_types[fname], type) and issubclass(
                model_types[fname], Enum
            ):
                option_type = click.STRING
                if isinstance(default, Enum):
                    default = default.value
            else:
                raise ValueError(f"Unsupported type {model_types[fname]}")
            c_option_kwargs["type"] = option_type
            c_option_kwargs["multiple"] = multiple
            c_option_kwargs["default"] = (
                None if default is PydanticUndefined else default
            )

            c_option_args = [f"--{fname.replace('_', '-')}"]
            if has_extra and fdata.json_schema_extra.get("short_arg"):
                c_option_args.append(f"-{fdata.json_schema_extra['short_arg']}")

            if option_type == click.BOOL:
                c_option_args = [
                    f"--{fname.replace('_', '-')}/--no-{fname.replace('_', '-')}"
                ]
                del c_option_kwargs["type"]
            log.msg(
                f'generated option "{fname}" with params {c_option_args}, {c_option_kwargs} from {fdata}',
                log.LogLevel.TRACE,
            )
            func = click.option(*c_option_args, **c_option_kwargs)(func)
        return func

    return decorator


def parse_int_range(value: str) -> t.List[int]:
    """
    Parse an inclusive integer range ``A:B`` or a single integer.

    Raises:
        ValueError: on malformed input or an empty range
    """
    parts = str(value).strip().split(":")
    if len(parts) == 1:
        return [int(parts[0])]
    if len(parts) != 2:
        raise ValueError(f"range must look like A:B, got {value!r}")
    start, stop = int(parts[0]), int(parts[1])
    if stop < start:
        raise ValueError(f"range {value!r} is empty")
    return list(range(start, stop + 1))


def parse_float_grid(value: str) -> t.List[float]:
    """
    Parse a grid ``A:B:step`` whose end is included when it lies within 1e-9
    of a grid point. Points are computed as A + i*step.

    Raises:
        ValueError: on malformed input, a non positive step or an empty grid
    """
    parts = str(value).strip().split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"grid must look like A:B:step, got {value!r}")
    start, stop, step = (float(x) for x in parts)
    if step <= 0.0:
        raise ValueError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"grid {value!r} is empty")
    count = int((stop - start) / step + 1e-9) + 1
    return [round(start + i * step, 12) for i in range(count)]


def parse_int_list(value: str | t.Iterable[int]) -> t.List[int]:
    """Parse ``1,2,4`` (or an iterable of integers) into a list."""
    if isinstance(value, str):
        items = [v for v in value.replace(" ", "").split(",") if v]
    else:
        items = list(value)
    if not items:
        raise ValueError("list is empty")
    return [int(v) for v in items]
