"""
Flat file outputs: CSV datasets with a '#' metadata header, JSON reports and
SVG figures rendered from the CSV files.
"""

import csv
import io
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

import click
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from pydantic import BaseModel  # noqa: E402

import vlsfbec.util.log as log  # noqa: E402
from vlsfbec import constants as const  # noqa: E402
from vlsfbec.exceptions import OutputError  # noqa: E402

STDOUT = "-"


def tool_version() -> str:
    try:
        return version(const.PACKAGE_NAME)
    except PackageNotFoundError:
        return "unknown"


def format_value(value: Any) -> str:
    """Render one CSV cell, floats with 12 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return const.CSV_FLOAT_FORMAT % value
    return str(value)


def render_csv(
    header: Sequence[str],
    rows: Iterable[Mapping[str, Any]],
    metadata: Mapping[str, Any],
) -> str:
    buf = io.StringIO()
    buf.write(f"# tool: {const.PACKAGE_NAME} {tool_version()}\n")
    for key, value in metadata.items():
        buf.write(f"# {key}: {format_value(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(row.get(col)) for col in header])
    return buf.getvalue()


def _write_text(path: str, text: str) -> None:
    if path == STDOUT:
        click.echo(text, nl=False)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"unable to write {path}: {e.strerror}", help="check the --out path")
    log.debug(f"wrote {path}")


def write_csv(
    path: str,
    header: Sequence[str],
    rows: Iterable[Mapping[str, Any]],
    metadata: Mapping[str, Any],
) -> None:
    """
    Write a dataset as CSV.

    Args:
        path (str): destination, "-" for stdout
        header (Sequence[str]): column names, in order
        rows (Iterable[Mapping[str, Any]]): one mapping per row, missing keys
            give empty cells
        metadata (Mapping[str, Any]): written as "# key: value" lines after the
            tool line

    Raises:
        OutputError: if the path cannot be written
    """
    _write_text(path, render_csv(header, rows, metadata))


def read_csv(path: str) -> Tuple[Dict[str, str], List[Dict[str, str]]]:
    """
    Read a CSV written by write_csv.

    Returns:
        Tuple[Dict[str, str], List[Dict[str, str]]]: the metadata and the rows
    """
    try:
        with open(path, encoding="utf-8", newline="") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise OutputError(f"unable to read {path}: {e.strerror}", help="check the CSV path")
    metadata: Dict[str, str] = {}
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            metadata[key.strip()] = value.strip()
        elif line:
            body.append(line)
    return metadata, list(csv.DictReader(body))


class Dataset(BaseModel):
    """A CSV dataset in JSON form."""

    metadata: Dict[str, Any]
    header: List[str]
    rows: List[Dict[str, Any]]


def write_json(path: str, model: BaseModel) -> None:
    """Write a pydantic model as indented JSON."""
    _write_text(path, model.model_dump_json(indent=2) + "\n")


def _as_float(value: str) -> float:
    return float(value) if value != "" else float("nan")


def render_svg(
    csv_path: str,
    svg_path: str,
    x: str,
    ys: Sequence[str],
    group: str | None = None,
    title: str | None = None,
    logy: bool = False,
) -> None:
    """
    Plot columns of a CSV written by write_csv as an SVG.

    The figure depends only on the CSV contents: the SVG id salt is fixed and
    no creation date is embedded.

    Args:
        csv_path (str): the dataset
        svg_path (str): the figure to write
        x (str): column for the horizontal axis
        ys (Sequence[str]): columns drawn as lines with markers
        group (str, optional): column whose values split the rows into
            separate lines
        title (str, optional): figure title
        logy (bool): logarithmic vertical axis

    Raises:
        OutputError: if a column is missing or a file cannot be read or written
    """
    metadata, rows = read_csv(csv_path)
    columns = set(rows[0].keys()) if rows else set()
    for col in [x, *ys] + ([group] if group else []):
        if col not in columns:
            raise OutputError(f"column {col!r} not in {csv_path}", help="check --x, --y and --group")

    groups: Dict[str, List[Dict[str, str]]] = {}
    for row in rows:
        groups.setdefault(row[group] if group else "", []).append(row)

    with matplotlib.rc_context({"svg.hashsalt": const.SVG_HASH_SALT, "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.8))
        try:
            for key, members in groups.items():
                xs = [_as_float(r[x]) for r in members]
                for y in ys:
                    label = y if not group else f"{y} ({group}={key})"
                    ax.plot(xs, [_as_float(r[y]) for r in members], marker="o", markersize=3, label=label)
            ax.set_xlabel(x)
            if len(ys) == 1:
                ax.set_ylabel(ys[0])
            if logy:
                ax.set_yscale("log")
            ax.set_title(title or metadata.get("command", ""))
            ax.grid(True, linewidth=0.5)
            ax.legend(fontsize="small")
            try:
                fig.savefig(svg_path, format="svg", metadata={"Date": None})
            except OSError as e:
                raise OutputError(f"unable to write {svg_path}: {e.strerror}", help="check the --out path")
        finally:
            plt.close(fig)
    log.debug(f"rendered {svg_path} from {csv_path}")
