import click

from os_dulac import report as rp
from os_dulac.options import (
    config_options,
    kit_command,
    parse_point,
    read_system,
    system_option,
)
from os_dulac.synthesis import local_dulac_hyperbolic

PUNCTURED_NOTE = (
    "the certificate covers the box minus the hole around the equilibrium; "
    "Div(B X) vanishes at the equilibrium itself"
)


@click.command()
@system_option
@click.option("--at", "at", required=True, help="Hyperbolic equilibrium 'x,y'.")
@click.option(
    "--min-radius", type=click.FLOAT, help="Smallest ring half-width to certify."
)
@config_options()
@kit_command
def cli(run, system_file, at, min_radius):
    """Quadratic Dulac function near a hyperbolic equilibrium."""
    X = read_system(system_file)
    c = run.config
    local = local_dulac_hyperbolic(
        X,
        parse_point(at),
        min_radius=min_radius or c.MIN_RADIUS,
        max_depth=c.DEPTH,
        workers=c.WORKERS,
        tol=max(c.TOL, 1e-10),
    )
    run.emit(
        rp.Report(
            system=str(X),
            command=run.command,
            result={
                "multiplier": str(local.multiplier),
                "box": str(local.box),
                "hole": str(local.hole),
                **rp.certificate_details(local.certificate),
            },
            certificate=rp.certificate_model(local.certificate),
            notes=[PUNCTURED_NOTE],
        )
    )
