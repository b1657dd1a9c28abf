import click

from os_dulac.commands.certify import emit_dulac
from os_dulac.dulac import bendixson
from os_dulac.options import (
    config_options,
    kit_command,
    parse_region,
    read_system,
    region_option,
    system_option,
)


@click.command()
@system_option
@region_option()
@config_options()
@kit_command
def cli(run, system_file, region):
    """Certify Div X > 0 on a box (Dulac with B = 1)."""
    X = read_system(system_file)
    dulac = bendixson(
        X, parse_region(region), max_depth=run.config.DEPTH, workers=run.config.WORKERS
    )
    return emit_dulac(run, X, dulac)
