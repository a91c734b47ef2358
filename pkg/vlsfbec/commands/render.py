import vlsfbec.util.log as log
from vlsfbec.exceptions import OutputError
from vlsfbec.util import output

from .backoff import BackoffCommand
from .base import BaseCommand, svg_path
from .bounds import BoundsCommand
from .rankgap import RankgapCommand
from .schedules import SchedulesCommand

# figures of the datasets that have one, keyed by the "# command:" metadata line
DEFAULT_PLOTS = {
    cmd.name: cmd.plot for cmd in (BoundsCommand, BackoffCommand, RankgapCommand, SchedulesCommand)
}


class RenderCommand(BaseCommand):
    """Re-render the SVG of an existing CSV dataset."""

    name = "render"

    def exec(self) -> None:
        opts = self.options
        metadata, _ = output.read_csv(opts.source)
        plot = dict(DEFAULT_PLOTS.get(metadata.get("command"), {}))
        if opts.x:
            plot["x"] = opts.x
        if opts.y:
            plot["ys"] = list(opts.y)
        if opts.group:
            plot["group"] = opts.group
        if "x" not in plot or "ys" not in plot:
            raise OutputError(
                f"no default figure for {opts.source}", help="choose the columns with --x and --y"
            )
        out = self.root_options.out
        target = svg_path(opts.source) if out == output.STDOUT else out
        output.render_svg(opts.source, target, logy=opts.logy, **plot)
        log.info(f"rendered {target}")
