import click

from os_dulac.options import config_options, kit_command, read_system, system_option
from os_dulac.parser import print_system
from os_dulac.report import Report


@click.command()
@system_option
@config_options()
@kit_command
def cli(run, system_file):
    """Parse a vector field and print it in canonical form."""
    X = read_system(system_file)
    run.emit(
        Report(
            system=str(X),
            command=run.command,
            result={
                "P": str(X.p),
                "Q": str(X.q),
                "degree": X.degree,
                "divergence": str(X.divergence),
                "canonical": print_system(X),
            },
        )
    )
