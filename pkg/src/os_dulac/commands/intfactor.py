import click

from os_dulac import report as rp
from os_dulac.darboux import check_integrating_factor
from os_dulac.options import config_options, kit_command, read_system, system_option
from os_dulac.parser import parse_multiplier
from os_dulac.pipeline import EXIT_CERTIFIED, EXIT_INCONCLUSIVE


@click.command()
@system_option
@click.option("--multiplier", required=True, help="Candidate integrating factor mu.")
@config_options()
@kit_command
def cli(run, system_file, multiplier):
    """Check Div(mu X) = 0 exactly."""
    X = read_system(system_file)
    mu = parse_multiplier(multiplier, X.params)
    residual = check_integrating_factor(mu, X)
    run.emit(
        rp.Report(
            system=str(X),
            command=run.command,
            result={"multiplier": str(mu), **rp.residual(residual)},
        )
    )
    return EXIT_CERTIFIED if residual.is_zero else EXIT_INCONCLUSIVE
