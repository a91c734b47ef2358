#!/usr/bin/env python
import click
from pydantic import ValidationError

import vlsfbec.util.log as log
from vlsfbec import constants as const
from vlsfbec.app_state import AppState
from vlsfbec.cli_options import (
    CLIOptionsBackoff,
    CLIOptionsBounds,
    CLIOptionsRankgap,
    CLIOptionsRender,
    CLIOptionsRoot,
    CLIOptionsSchedules,
    CLIOptionsSimulate,
)
from vlsfbec.commands.backoff import BackoffCommand
from vlsfbec.commands.base import BaseCommand
from vlsfbec.commands.bounds import BoundsCommand
from vlsfbec.commands.rankgap import RankgapCommand
from vlsfbec.commands.render import RenderCommand
from vlsfbec.commands.root import RootCommand
from vlsfbec.commands.schedules import SchedulesCommand
from vlsfbec.commands.simulate import SimulateCommand
from vlsfbec.exceptions import AnalyticMismatch, ConfigError, OutputError, VLSFException
from vlsfbec.util.cli import handle_option_error, pydantic_to_click


@click.group()
@pydantic_to_click(CLIOptionsRoot)
@click.version_option(package_name=const.PACKAGE_NAME)
@click.pass_context
def cli(ctx: click.Context, **kwargs):
    """
    Bounds and simulations for variable-length stop-feedback codes on the
    binary erasure channel

    Every sub-command writes a flat dataset (CSV by default) whose '#' header
    records the tool version, seed and a hash of the resolved options, so a
    run can be repeated byte for byte. Options can also be read from a YAML
    file (--config-file); command line flags override file values.

    Exit codes: 0 success, 1 invalid options or config, 2 runtime error,
    3 simulation disagrees with the exact values.
    """
    try:
        options = CLIOptionsRoot.model_validate(kwargs)
    except ValidationError as e:
        handle_option_error(e)

    log.log_level = log.LogLevel[options.log_level]
    log.msg(f"set log level to {options.log_level}", log.LogLevel.DEBUG)
    ctx.obj = AppState(root_options=options)
    try:
        RootCommand()
    except VLSFException as e:
        _fail(ctx, e)
    log.trace("finished initializing root command")


def _fail(ctx: click.Context, e: VLSFException) -> None:
    """Report a library error and exit with its code."""
    log.error(str(e))
    if isinstance(e, OutputError):
        log.error(e.help)
    if isinstance(e, AnalyticMismatch):
        ctx.exit(const.EXIT_MISMATCH)
    if isinstance(e, ConfigError):
        ctx.exit(const.EXIT_VALIDATION)
    ctx.exit(const.EXIT_RUNTIME)


def _run(ctx: click.Context, command_class: type[BaseCommand], options_model, kwargs) -> None:
    try:
        options = options_model.model_validate(kwargs)
    except ValidationError as e:
        handle_option_error(e)

    setattr(ctx.obj, f"{command_class.name}_options", options)
    try:
        command_class().exec()
    except VLSFException as e:
        _fail(ctx, e)


@cli.command()
@pydantic_to_click(CLIOptionsBounds)
@click.pass_context
def bounds(ctx: click.Context, **kwargs):
    """
    Expected blocklength bounds and rates for a range of k and p

    One row per (k, p) with the fountain code achievability bound, the exact
    expected stopping time of the systematic code, and the converse.
    """
    _run(ctx, BoundsCommand, CLIOptionsBounds, kwargs)


@cli.command()
@pydantic_to_click(CLIOptionsBackoff)
@click.pass_context
def backoff(ctx: click.Context, **kwargs):
    """
    Percentage of backoff from capacity at a fixed k over a grid of p
    """
    _run(ctx, BackoffCommand, CLIOptionsBackoff, kwargs)


@cli.command()
@pydantic_to_click(CLIOptionsRankgap)
@click.pass_context
def rankgap(ctx: click.Context, **kwargs):
    """
    Expected rank advantage of systematic transmission at time k
    """
    _run(ctx, RankgapCommand, CLIOptionsRankgap, kwargs)


@cli.command()
@pydantic_to_click(CLIOptionsSchedules)
@click.pass_context
def schedules(ctx: click.Context, **kwargs):
    """
    Optimal finite decoding schedules for a target error probability

    For every m and k the decoding times minimising the expected blocklength
    are found with the last time as small as the error target allows.
    """
    _run(ctx, SchedulesCommand, CLIOptionsSchedules, kwargs)


@cli.command()
@pydantic_to_click(CLIOptionsSimulate)
@click.pass_context
def simulate(ctx: click.Context, **kwargs):
    """
    Monte Carlo simulation checked against the exact values

    Writes a CSV of the checks (and a JSON report next to it when --out is a
    file), then exits with code 3 if any check failed.
    """
    _run(ctx, SimulateCommand, CLIOptionsSimulate, kwargs)


@cli.command()
@pydantic_to_click(CLIOptionsRender)
@click.pass_context
def render(ctx: click.Context, **kwargs):
    """
    Render the SVG figure of an existing CSV dataset
    """
    _run(ctx, RenderCommand, CLIOptionsRender, kwargs)


if __name__ == "__main__":
    cli()
