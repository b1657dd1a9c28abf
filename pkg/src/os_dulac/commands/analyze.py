import click

from os_dulac.options import (
    config_options,
    kit_command,
    parse_region,
    read_system,
    region_option,
    system_option,
)
from os_dulac.pipeline import run_analyze


@click.command()
@system_option
@region_option()
@click.option("--tiles", type=click.IntRange(min=1), help="Tiles per axis.  [default: TILES]")
@config_options()
@kit_command
def cli(run, system_file, region, tiles):
    """Equilibria, local and global Dulac certificates and periodic orbits in a region.

    Exit code 0 when the region is certified, 1 when a periodic orbit was
    found and 2 when uncovered cells remain.  Coverage is best effort.
    """
    X = read_system(system_file)
    config = run.config
    if tiles:
        config = config.model_copy(update={"TILES": tiles})
    analysis = run_analyze(X, parse_region(region), config)
    run.emit(analysis.to_report(run.command))
    return analysis.exit_code
