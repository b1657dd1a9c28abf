import click

from os_dulac import report as rp
from os_dulac.commands.darboux import (
    curves_option,
    exp_factor_option,
    first_integral,
    integral_result,
)
from os_dulac.darboux import verify_first_integral
from os_dulac.options import (
    config_options,
    kit_command,
    parse_region,
    read_system,
    region_option,
    system_option,
)
from os_dulac.pipeline import EXIT_CERTIFIED, EXIT_INCONCLUSIVE

MAX_DRIFT = 1e-6


@click.command()
@system_option
@curves_option
@exp_factor_option
@region_option(required=False, help="Box for random seeds.  [default: SAMPLE_BOX]")
@click.option("--trajectories", default=8, show_default=True, type=click.IntRange(min=0))
@click.option("--t-span", type=click.FLOAT, help="Integration time.  [default: T_SPAN]")
@click.option("--seed", type=click.INT, help="Random seed.  [default: SEED]")
@config_options()
@kit_command
def cli(run, system_file, curves, exp_factors, region, trajectories, t_span, seed):
    """Check a Darboux first integral exactly and along random trajectories."""
    X = read_system(system_file)
    c = run.config
    H, notes = first_integral(X, curves, exp_factors)
    residual = verify_first_integral(
        H,
        X,
        trajectories=trajectories,
        t_span=c.T_SPAN if t_span is None else t_span,
        tol=c.TOL,
        seed=c.SEED if seed is None else seed,
        box=parse_region(region or c.SAMPLE_BOX),
        workers=c.WORKERS,
    )
    if not residual.drift_bounded:
        notes.append("H blows up or is undefined along a sampled trajectory; drift unbounded")
    run.emit(
        rp.Report(
            system=str(X),
            command=run.command,
            result={**integral_result(H), **rp.residual(residual)},
            notes=notes,
        )
    )
    ok = residual.is_zero and residual.numeric_max_drift <= MAX_DRIFT
    return EXIT_CERTIFIED if ok else EXIT_INCONCLUSIVE
