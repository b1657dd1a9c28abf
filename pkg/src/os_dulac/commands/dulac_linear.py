import click

from os_dulac.coeffs import format_rational
from os_dulac.options import config_options, kit_command
from os_dulac.report import Report
from os_dulac.synthesis import (
    B11Reading,
    Matrix2,
    ansatz_determinant_factor,
    lyapunov_residual,
    printed_coefficients,
    quadratic_dulac_linear,
)
from os_dulac.vfield import div_product


@click.command()
@click.option("--matrix", required=True, help="Linear part 'a,b;c,d'.")
@click.option(
    "--reading",
    type=click.Choice([r.value for r in B11Reading]),
    default=B11Reading.C2_MINUS_3D2.value,
    show_default=True,
    help="Reading of the b11 closed form to compare against.",
)
@config_options()
@kit_command
def cli(run, matrix, reading):
    """Quadratic Dulac function B with Div(B A z) = |A z|^2."""
    A = Matrix2.parse(matrix)
    X = A.field()
    B = quadratic_dulac_linear(A)
    residual = div_product(B.to_poly(), X) - X.norm_squared
    result = {
        "matrix": str(A),
        "multiplier": str(B.to_poly()),
        "coefficients": dict(
            zip(("b20", "b11", "b02"), (format_rational(v) for v in B.coefficients))
        ),
        "identity_residual": str(residual),
        "lyapunov_residual": str(lyapunov_residual(A)),
        "ansatz_determinant": format_rational(ansatz_determinant_factor(A)),
    }
    notes = []
    try:
        b20, b02, b11 = printed_coefficients(A, B11Reading(reading))
    except ZeroDivisionError as e:
        notes.append(f"closed forms not evaluated: {e}")
    else:
        result["closed_forms"] = {
            "b20": format_rational(b20),
            "b02": format_rational(b02),
            "b11": format_rational(b11),
            "reading": reading,
            "agree": (b20, b11, b02) == (B.b20, B.b11, B.b02),
        }
    run.emit(Report(system=str(X), command=run.command, result=result, notes=notes))
