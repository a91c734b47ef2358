from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Mapping, Sequence, Union

import click

import vlsfbec.commands.config as c
import vlsfbec.util.log as log
from vlsfbec import constants as const
from vlsfbec.types import OutputFormat
from vlsfbec.util import output

if TYPE_CHECKING:
    from vlsfbec.app_state import AppState  # pragma: no cover # noqa

    from ..cli_options import CLIOptionsRoot  # pragma: no cover # noqa


class BaseCommand:
    """
    Base command class that resolves the options of a sub-command against the
    config file and writes its dataset.

    Sub-classes set ``name`` (the AppState options prefix), ``header``, and
    ``plot`` (keyword arguments for output.render_svg, None if the dataset
    has no figure), and implement ``rows``.
    """

    name: str = ""
    header: Sequence[str] = ()
    labels: Mapping[str, str] = {}
    plot: Dict[str, Any] | None = None

    def __init__(
        self,
        ctx: click.Context | None = None,
        app_state: Union["AppState", None] = None,
    ) -> None:
        self._ctx: click.Context
        self._app_state: "AppState"

        if ctx is not None:
            self._ctx = ctx
        else:
            self._ctx = click.get_current_context()

        if app_state is not None:
            self._app_state = app_state
        else:
            self._app_state = self._ctx.obj

        self._app_state.command = self.name
        c.resolve_model_with_cli_options(self._app_state)
        log.log_level = log.LogLevel[self._app_state.root_options.log_level]
        self._app_state.freeze()
        log.debug(
            {
                "command": self.name,
                "config_hash": self._app_state.config_hash(),
                "seed": self.root_options.seed,
            }
        )

    @property
    def ctx(self) -> click.Context:
        return self._ctx

    @property
    def app_state(self) -> "AppState":
        return self._app_state

    @property
    def root_options(self) -> "CLIOptionsRoot":
        return self._app_state.root_options

    @property
    def options(self):
        return self._app_state.command_options

    def metadata(self) -> Dict[str, Any]:
        meta = {
            "command": self.name,
            "seed": self.root_options.seed,
            "config_hash": self._app_state.config_hash(),
            "rng": const.RNG_ALGORITHM,
        }
        meta.update(self.labels)
        return meta

    def rows(self) -> Iterable[Mapping[str, Any]]:
        raise NotImplementedError  # pragma: no cover

    def exec(self) -> None:
        self.emit(list(self.rows()))

    def emit(self, rows: List[Mapping[str, Any]], header: Sequence[str] | None = None) -> None:
        """
        Write the rows in the selected format. svg writes the CSV to --out and
        the figure next to it with an .svg suffix.
        """
        header = list(header or self.header)
        out = self.root_options.out
        fmt = self.root_options.format
        if fmt is OutputFormat.JSON:
            metadata = {"tool": f"{const.PACKAGE_NAME} {output.tool_version()}", **self.metadata()}
            output.write_json(out, output.Dataset(metadata=metadata, header=header, rows=rows))
            return
        output.write_csv(out, header, rows, self.metadata())
        if fmt is OutputFormat.SVG:
            if self.plot is None:
                log.warn(f"{self.name} has no figure, wrote {out} only")
                return
            output.render_svg(out, svg_path(out), **self.plot)


def svg_path(csv_path: str) -> str:
    """data/fig2.csv -> data/fig2.svg"""
    if csv_path.endswith(".csv"):
        return csv_path[: -len(".csv")] + ".svg"
    return csv_path + ".svg"
