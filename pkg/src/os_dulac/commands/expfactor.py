import click

from os_dulac.darboux import exponential_factor_cofactor
from os_dulac.options import config_options, kit_command, read_system, system_option
from os_dulac.parser import parse_poly
from os_dulac.report import Report


@click.command()
@system_option
@click.option("--g", "numerator", required=True, help="Numerator g of exp(g/h).")
@click.option("--h", "denominator", default="1", show_default=True, help="Denominator h.")
@config_options()
@kit_command
def cli(run, system_file, numerator, denominator):
    """Cofactor of the exponential factor exp(g/h)."""
    X = read_system(system_file)
    factor = exponential_factor_cofactor(
        parse_poly(numerator, X.params), parse_poly(denominator, X.params), X
    )
    run.emit(
        Report(
            system=str(X),
            command=run.command,
            result={
                "factor": str(factor),
                "g": str(factor.g),
                "h": str(factor.h),
                "k": str(factor.k),
            },
        )
    )
