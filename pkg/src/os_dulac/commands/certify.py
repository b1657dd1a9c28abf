import click

from os_dulac import report as rp
from os_dulac.dulac import certify_dulac
from os_dulac.options import (
    config_options,
    kit_command,
    parse_region,
    read_system,
    region_option,
    system_option,
)
from os_dulac.parser import parse_multiplier
from os_dulac.pipeline import EXIT_CERTIFIED, EXIT_INCONCLUSIVE


def emit_dulac(run, X, dulac):
    run.emit(
        rp.Report(
            system=str(X),
            command=run.command,
            result=rp.dulac_result(dulac),
            certificate=rp.certificate_model(dulac.certificate),
            notes=list(dulac.notes),
        )
    )
    return EXIT_CERTIFIED if dulac.certified else EXIT_INCONCLUSIVE


@click.command()
@system_option
@region_option()
@click.option(
    "--multiplier",
    required=True,
    help="Dulac multiplier: a polynomial or exp(<poly>)*<poly>.",
)
@config_options()
@kit_command
def cli(run, system_file, region, multiplier):
    """Certify Div(B X) > 0 on a box."""
    X = read_system(system_file)
    B = parse_multiplier(multiplier, X.params)
    dulac = certify_dulac(
        X, B, parse_region(region), max_depth=run.config.DEPTH, workers=run.config.WORKERS
    )
    return emit_dulac(run, X, dulac)
