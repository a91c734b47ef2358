import hashlib
import json

from pydantic import ConfigDict, Field

from vlsfbec import cli_options
from vlsfbec.types import ConfigFile, FreezableBaseModel


class AppState(FreezableBaseModel):
    """
    AppState defines the model for the application state. The application state is stored on the
    click context as an object that can always be retrieved by any component of the program by
    calling click.get_current_context().obj.

    It holds the options supplied on the command line, the loaded configuration file, and the
    options of the sub-command being run once they have been merged with the file.
    """

    model_config = ConfigDict(extra="forbid")

    command: str | None = Field(None, description="The name of the sub-command being run.")
    loaded_config: ConfigFile | None = Field(
        None,
        description="The configuration file, its options hold the resolved value of every option once merged.",
    )
    root_options: cli_options.CLIOptionsRoot | None = Field(
        None, description="These are the options passed to the root of the CLI."
    )
    bounds_options: cli_options.CLIOptionsBounds | None = Field(
        None, description="These are the options passed to the bounds command."
    )
    backoff_options: cli_options.CLIOptionsBackoff | None = Field(
        None, description="These are the options passed to the backoff command."
    )
    rankgap_options: cli_options.CLIOptionsRankgap | None = Field(
        None, description="These are the options passed to the rankgap command."
    )
    schedules_options: cli_options.CLIOptionsSchedules | None = Field(
        None, description="These are the options passed to the schedules command."
    )
    simulate_options: cli_options.CLIOptionsSimulate | None = Field(
        None, description="These are the options passed to the simulate command."
    )
    render_options: cli_options.CLIOptionsRender | None = Field(
        None, description="These are the options passed to the render command."
    )

    @property
    def command_options(self) -> FreezableBaseModel | None:
        if self.command is None:
            return None
        return getattr(self, f"{self.command}_options")

    def config_hash(self) -> str:
        """
        A short stable digest of everything that determines the output: the
        command, its resolved options and the seed.
        """
        options = self.command_options
        payload = {
            "command": self.command,
            "options": options.model_dump(mode="json") if options is not None else {},
            "seed": self.root_options.seed if self.root_options else None,
        }
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
