import click

from os_dulac import report as rp
from os_dulac.options import (
    config_options,
    kit_command,
    parse_point,
    parse_region,
    read_system,
    region_option,
    system_option,
)
from os_dulac.parser import parse_poly
from os_dulac.synthesis import flowbox_dulac


@click.command()
@system_option
@click.option("--from", "start", required=True, help="Transversal start 'x,y'.")
@click.option("--to", "end", required=True, help="Transversal end 'x,y'.")
@click.option("--g", "target", default="1", show_default=True, help="Target Div(B X).")
@click.option("--n-across", default=5, show_default=True, type=click.IntRange(min=1))
@click.option("--n-along", default=21, show_default=True, type=click.IntRange(min=3))
@click.option("--t-span", default=1.0, show_default=True, type=click.FLOAT)
@region_option(required=False, help="Window the flow box must stay in.")
@config_options()
@kit_command
def cli(run, system_file, start, end, target, n_across, n_along, t_span, region):
    """Sample a Dulac function on the flow box swept from a transversal."""
    X = read_system(system_file)
    sampled = flowbox_dulac(
        X,
        (parse_point(start), parse_point(end)),
        g=parse_poly(target, X.params),
        n_across=n_across,
        n_along=n_along,
        t_span=t_span,
        window=parse_region(region) if region else None,
        tol=run.config.TOL,
    )
    run.emit(
        rp.Report(
            system=str(X),
            command=run.command,
            result={
                "transversal": [rp.point(p) for p in sampled.transversal],
                "shape": list(sampled.shape),
                "min_divergence": sampled.min_divergence,
                "tolerance": sampled.tolerance,
                "min_multiplier": float(sampled.values.min()),
                "max_multiplier": float(sampled.values.max()),
            },
        )
    )
