import click

from os_dulac.darboux import cofactor_of, curve_count_hint
from os_dulac.options import config_options, kit_command, read_system, system_option
from os_dulac.parser import parse_curves
from os_dulac.report import Report


def curve_result(curve):
    return {"f": str(curve.f), "k": str(curve.k), "warnings": list(curve.warnings)}


@click.command()
@system_option
@click.option("--curves", required=True, help="Invariant functions 'f1;f2;...'.")
@config_options()
@kit_command
def cli(run, system_file, curves):
    """Cofactor k of each invariant function, <grad f, X> = k f."""
    X = read_system(system_file)
    found = [cofactor_of(f, X) for f in parse_curves(curves, X.params)]
    run.emit(
        Report(
            system=str(X),
            command=run.command,
            result={"curves": [curve_result(c) for c in found]},
            notes=[str(curve_count_hint(X.degree, len(found)))],
        )
    )
