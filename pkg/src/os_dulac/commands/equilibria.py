import click

from os_dulac import report as rp
from os_dulac.equilibria import find_equilibria
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
@click.option("--grid", type=click.IntRange(min=2), help="Newton seeds per axis.")
@config_options()
@kit_command
def cli(run, system_file, region, grid):
    """Locate and classify the equilibria in a region."""
    X = read_system(system_file)
    box = parse_region(region)
    c = run.config
    found = find_equilibria(
        X,
        box,
        grid_n=grid or c.GRID_N,
        tol=c.TOL,
        threshold=c.CLASSIFY_THRESHOLD,
        dedup_radius=c.DEDUP_RADIUS,
    )
    run.emit(
        rp.Report(
            system=str(X),
            command=run.command,
            result={
                "region": str(box),
                "equilibria": [rp.equilibrium(e) for e in found],
            },
        )
    )
