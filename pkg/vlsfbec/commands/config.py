import inspect
import io
import json
import os
import pathlib
from typing import Any, Dict, List, Type

import click
import jinja2
import yaml
from jinja2.runtime import StrictUndefined
from pydantic import BaseModel, ValidationError

import vlsfbec.util.log as log
from vlsfbec import constants as const
from vlsfbec.app_state import AppState
from vlsfbec.exceptions import ConfigError
from vlsfbec.types.config_file import ConfigFile
from vlsfbec.util.cli import handle_config_error

from .. import cli_options

SKIP_PARAM_SOURCES = [
    click.core.ParameterSource.ENVIRONMENT,
    click.core.ParameterSource.COMMANDLINE,
]


def load_config(config_file: str | None, config_vars: Dict[str, str]) -> ConfigFile:
    """
    Load the configuration file.

    The file is rendered as a jinja2 template first, `var` holds the values of
    --config-var and `env` the environment. The rendered YAML must have a top
    level `vlsf` mapping.

    Args:
        config_file (str | None): The path to the configuration file, None for no file.
        config_vars (Dict[str, str]): A dictionary of configuration variables.

    Returns:
        ConfigFile: The loaded configuration.

    Raises:
        ConfigError: If the file is not valid YAML or has no `vlsf` section.
    """
    if config_file is None:
        log.trace("no config file, using command line options only")
        return ConfigFile()

    log.trace(f"loading config file: {config_file}")
    rendered_config = _process_template(config_file, _get_full_config_vars(config_vars))
    log.trace(f"rendered config: {rendered_config}")
    try:
        document = yaml.safe_load(rendered_config)
    except yaml.YAMLError as e:
        raise ConfigError(f"configuration file {config_file} is not valid YAML: {e}")
    if not isinstance(document, dict) or const.CONFIG_ROOT_KEY not in document:
        raise ConfigError(
            f"configuration file {config_file} must have a top level '{const.CONFIG_ROOT_KEY}' key"
        )
    loaded_config: Dict[Any, Any] = document[const.CONFIG_ROOT_KEY] or {}

    try:
        parsed_config = ConfigFile.model_validate(loaded_config)
    except ValidationError as e:
        handle_config_error(e)

    return parsed_config


def get_cli_options_model_classes() -> List[Type[BaseModel]]:
    """
    Get all model classes from vlsfbec.cli_options that inherit from BaseModel
    and have names prefixed with 'CLIOptions'.

    Returns:
        List[Type[BaseModel]]: List of model classes.
    """
    model_classes = []
    for name, obj in inspect.getmembers(cli_options, inspect.isclass):
        if name.startswith("CLIOptions") and issubclass(obj, BaseModel):
            model_classes.append(obj)
    return model_classes


def check_unknown_options(config: ConfigFile) -> None:
    """
    Reject option keys that no command understands.

    Raises:
        ConfigError: listing every unknown key
    """
    known = set()
    for model_class in get_cli_options_model_classes():
        known.update(model_class.model_fields.keys())
    unknown = sorted(set(config.options) - known)
    if unknown:
        raise ConfigError(f"unknown option(s) in configuration file: {', '.join(unknown)}")


def resolve_model_with_cli_options(app_state: AppState) -> None:
    """
    Fill every options model on the AppState with values from the config file.

    A value given on the command line or through the environment wins over
    the file. After resolution the config file options hold the final value
    of every option.

    Args:
        app_state (AppState): The application state.
    """
    if app_state.loaded_config is None:
        raise ValueError("loaded_config is not set on the AppState object")

    log.trace(f"not overwriting param sources: {SKIP_PARAM_SOURCES}")
    model_classes = tuple(get_cli_options_model_classes())
    for field in app_state.model_fields:
        model = getattr(app_state, field)
        if isinstance(model, model_classes):
            log.trace(f"model {field}: matches model_class {model.__class__.__name__}")
            setattr(app_state, field, _merge_model_parameters(app_state, model))


def _parameter_source(name: str) -> click.core.ParameterSource | None:
    """The source of a parameter on the current context or one of its parents."""
    ctx = click.get_current_context(silent=True)
    while ctx is not None:
        if name in ctx.params:
            return ctx.get_parameter_source(name)
        ctx = ctx.parent
    return None


def _merge_model_parameters(app_state: AppState, model: BaseModel) -> BaseModel:
    """
    Return a copy of the model with the file values applied. The values are
    validated together so options that depend on each other can be set in
    any order in the file.

    Args:
        app_state (AppState): The application state.
        model (BaseModel): The model instance.

    Returns:
        BaseModel: The merged model.
    """
    values = model.model_dump()
    for k, v in app_state.loaded_config.options.items():
        if k not in model.model_fields:
            continue
        if _parameter_source(k) in SKIP_PARAM_SOURCES:
            log.trace(f"skipping {k} as it is set via {_parameter_source(k)}")
            continue
        log.trace(f"Setting {k} to {v} on {model.__class__.__name__}")
        values[k] = v
    try:
        merged = model.__class__.model_validate(values)
    except ValidationError as e:
        handle_config_error(e)
    for k in merged.model_fields.keys():
        app_state.loaded_config.options[k] = getattr(merged, k)
    return merged


def _process_template(config_file: str, config_vars: Dict[str, Any]) -> str:
    """
    Process the Jinja2 template.
    """
    try:
        template_reader = io.StringIO()
        jinja_env = jinja2.Environment(
            undefined=StrictUndefined,
            loader=jinja2.FileSystemLoader(pathlib.Path(config_file).parents[0]),
        )
        template_config = jinja_env.get_template(pathlib.Path(config_file).name)
        template_config.stream(**config_vars).dump(template_reader)
    except jinja2.exceptions.UndefinedError as e:
        log.trace(f"Jinja2 Environment\n{json.dumps(config_vars['var'], indent=2)}")
        raise ConfigError(f"configuration file contains invalid template substitutions: {e}")
    except jinja2.exceptions.TemplateNotFound as e:
        raise ConfigError(f"configuration file {config_file} not found: {e}")
    except jinja2.exceptions.TemplateSyntaxError as e:
        raise ConfigError(
            f"configuration file contains invalid template syntax; Line: {e.lineno}; Message: {e.message}"
        )

    return template_reader.getvalue()


def _get_full_config_vars(config_vars: Dict[str, str]) -> Dict[str, Any]:
    """
    Get the full configuration variables.
    """
    return {"var": dict(config_vars), "env": dict(os.environ)}
