"""Options shared by the commands and the run around them.

Configuration precedence: defaults < ``OS_DULAC_*`` environment <
``-c/--config-file`` < command-line options.
"""
import functools
import sys
from dataclasses import dataclass
from typing import Optional

import click
from pydantic import ValidationError

from os_dulac.config import KitConfig, LogLevel
from os_dulac.exceptions import InputError, OsDulacError
from os_dulac.flow import check_tolerance
from os_dulac.geometry import Box2, Point
from os_dulac.initializers import InitDebug, InitLog, InitNumerics, initialize
from os_dulac.parser import parse_system
from os_dulac.pipeline import EXIT_INCONCLUSIVE, EXIT_INPUT
from os_dulac.report import OutputFormat, render
from os_dulac.utils import update_from_pyfile

DEFAULT_CONFIG = KitConfig()


def load_config(config_file=None, **overrides):
    config = KitConfig()
    if config_file:
        config = update_from_pyfile(config, config_file)
    update = {k: v for k, v in overrides.items() if v is not None}
    if update:
        config = KitConfig.model_validate({**config.model_dump(), **update})
    if config.DEBUG:
        config = config.model_copy(update={"LOG_LEVEL": LogLevel.debug})
    check_tolerance(config.TOL)
    return config


def read_system(path):
    with open(path) as f:
        return parse_system(f.read())


def parse_point(text):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError as e:
        raise InputError(f"invalid point {text!r}, expected 'x,y'") from e
    return Point(x, y)


def parse_region(text):
    return Box2.parse(text)


@dataclass
class Run:
    """One invocation: its configuration and where its output goes."""

    command: str
    config: KitConfig
    fmt: OutputFormat = OutputFormat.json
    out: Optional[str] = None

    def write(self, text, path=None):
        path = path or self.out
        if path:
            with open(path, "w") as f:
                f.write(text)
        else:
            click.echo(text, nl=False)

    def emit(self, report):
        self.write(render(report, self.fmt))


def config_options(formats=(OutputFormat.json, OutputFormat.text), default=OutputFormat.json):
    def decorator(func):
        options = [
            click.option(
                "-c",
                "--config-file",
                type=click.Path(exists=True, dir_okay=False),
                help="Python config file.",
            ),
            click.option(
                "-l",
                "--log-level",
                type=click.Choice([l.name for l in LogLevel]),
                help=f"Log level.  [default: {DEFAULT_CONFIG.LOG_LEVEL.name}]",
            ),
            click.option("--debug", is_flag=True, help="Enable debug mode."),
            click.option(
                "--workers",
                type=click.IntRange(min=1),
                help=f"Worker threads for batch steps.  [default: {DEFAULT_CONFIG.WORKERS}]",
            ),
            click.option(
                "--depth",
                type=click.IntRange(min=0),
                help=f"Subdivision depth limit.  [default: {DEFAULT_CONFIG.DEPTH}]",
            ),
            click.option(
                "--tol",
                type=click.FLOAT,
                help=f"Numeric tolerance.  [default: {DEFAULT_CONFIG.TOL}]",
            ),
            click.option(
                "--out",
                type=click.Path(dir_okay=False),
                help="Write the output to a file instead of stdout.",
            ),
            click.option(
                "--format",
                "fmt",
                type=click.Choice([f.value for f in formats]),
                default=OutputFormat(default).value,
                show_default=True,
                help="Output format.",
            ),
        ]
        for option in reversed(options):
            func = option(func)
        return func

    return decorator


def system_option(func):
    return click.option(
        "--system",
        "system_file",
        required=True,
        type=click.Path(exists=True, dir_okay=False),
        help="Vector field file (.vf).",
    )(func)


def region_option(required=True, default=None, help="Region 'x0:x1,y0:y1'."):
    return click.option("--region", required=required, default=default, help=help)


def kit_command(func):
    """Build the config, set up logging and map errors to exit codes.

    The wrapped function receives a :class:`Run` and the command's own
    options, and returns the exit code.
    """

    @functools.wraps(func)
    @click.pass_context
    def wrapper(ctx, config_file, log_level, debug, workers, depth, tol, out, fmt, **kwargs):
        try:
            config = load_config(
                config_file,
                LOG_LEVEL=log_level,
                DEBUG=debug or None,
                WORKERS=workers,
                DEPTH=depth,
                TOL=tol,
            )
            initialize(config, InitLog(), InitDebug(), InitNumerics())
            if config.DEBUG:
                print(f"KitConfig: {config.model_dump_json(indent=4)}", file=sys.stderr)
            code = func(Run(ctx.info_name, config, OutputFormat(fmt), out), **kwargs)
        except (InputError, ValidationError, OSError) as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_INPUT)
        except OsDulacError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(EXIT_INCONCLUSIVE)
        ctx.exit(code or 0)

    return wrapper
