import click

from os_dulac import report as rp
from os_dulac.darboux import check_inverse_integrating_factor
from os_dulac.options import config_options, kit_command, read_system, system_option
from os_dulac.parser import parse_poly
from os_dulac.pipeline import EXIT_CERTIFIED, EXIT_INCONCLUSIVE


@click.command()
@system_option
@click.option(
    "--multiplier", required=True, help="Candidate inverse integrating factor V."
)
@config_options()
@kit_command
def cli(run, system_file, multiplier):
    """Check <grad V, X> = V Div X exactly."""
    X = read_system(system_file)
    V = parse_poly(multiplier, X.params)
    residual = check_inverse_integrating_factor(V, X)
    run.emit(
        rp.Report(
            system=str(X),
            command=run.command,
            result={"multiplier": str(V), **rp.residual(residual)},
        )
    )
    return EXIT_CERTIFIED if residual.is_zero else EXIT_INCONCLUSIVE
