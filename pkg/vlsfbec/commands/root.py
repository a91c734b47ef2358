from typing import Dict

import click

import vlsfbec.util.log as log
from vlsfbec.cli_options import CLIOptionsRoot

from .config import check_unknown_options, load_config, resolve_model_with_cli_options


class RootCommand:
    """
    The RootCommand class is the main entry point for the CLI.

    It is only responsible for setting up the root/global options shared by
    all sub-commands.
    """

    def __init__(self) -> None:
        log.trace("initializing root command object")
        app_state = click.get_current_context().obj
        options = app_state.root_options
        log.debug(f"loading config file: {options.config_file}")
        app_state.loaded_config = load_config(
            options.config_file, self._prepare_template_vars(options)
        )
        check_unknown_options(app_state.loaded_config)
        log.trace(f"loaded config: {app_state.loaded_config}")
        # the file may set log_level, seed and the other root options
        resolve_model_with_cli_options(app_state)
        log.log_level = log.LogLevel[app_state.root_options.log_level]
        log.trace("finished initializing root command object")

    @staticmethod
    def _prepare_template_vars(options: CLIOptionsRoot) -> Dict[str, str]:
        """
        Prepare the template variables from the --config-var key=value pairs.

        Args:
            options (CLIOptionsRoot): The root options.

        Returns:
            Dict[str, str]: The template variables.
        """
        template_items = {}
        for item in options.config_var or []:
            key, sep, value = item.partition("=")
            if not sep or not key:
                log.warn(f"skipping invalid config var {item}; not valid k=v pair")
                continue
            log.trace(f"adding template var {key}={value}")
            template_items[key] = value
        return template_items
