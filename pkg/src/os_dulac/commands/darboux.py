import click

from os_dulac.coeffs import format_coefficient
from os_dulac.commands.cofactor import curve_result
from os_dulac.darboux import (
    cofactor_of,
    curve_count_hint,
    darboux_first_integral,
    exponential_factor_cofactor,
)
from os_dulac.options import config_options, kit_command, read_system, system_option
from os_dulac.parser import parse_curves, parse_poly
from os_dulac.report import Report

curves_option = click.option(
    "--curves", required=True, help="Invariant functions 'f1;f2;...'."
)
exp_factor_option = click.option(
    "--exp-factor",
    "exp_factors",
    nargs=2,
    multiple=True,
    metavar="G H",
    help="Exponential factor exp(G/H); repeatable.",
)


def first_integral(X, curves, exp_factors):
    """The Darboux first integral and the notes that go with it."""
    found = [cofactor_of(f, X) for f in parse_curves(curves, X.params)]
    factors = [
        exponential_factor_cofactor(parse_poly(g, X.params), parse_poly(h, X.params), X)
        for g, h in exp_factors
    ]
    H = darboux_first_integral(found, factors)
    notes = [str(curve_count_hint(X.degree, len(found)))]
    notes.extend(w for c in found for w in c.warnings)
    return H, notes


def integral_result(H):
    return {
        "first_integral": str(H),
        "exponents": [format_coefficient(e) for e in H.exponents],
        "total_cofactor": str(H.total_cofactor),
        "curves": [curve_result(c) for c, _ in H.curve_factors],
        "exp_factors": [str(e) for e, _ in H.exp_factors],
    }


@click.command()
@system_option
@curves_option
@exp_factor_option
@config_options()
@kit_command
def cli(run, system_file, curves, exp_factors):
    """Darboux first integral from invariant curves and exponential factors."""
    X = read_system(system_file)
    H, notes = first_integral(X, curves, exp_factors)
    run.emit(
        Report(system=str(X), command=run.command, result=integral_result(H), notes=notes)
    )
