import click

from os_dulac import report as rp
from os_dulac.flow import integrate, trajectory_csv
from os_dulac.options import (
    config_options,
    kit_command,
    parse_point,
    parse_region,
    read_system,
    region_option,
    system_option,
)
from os_dulac.report import OutputFormat


@click.command()
@system_option
@click.option("--at", "at", required=True, help="Initial point 'x,y'.")
@click.option(
    "--t-span",
    type=click.FLOAT,
    help="Integration time, negative to run backward.  [default: T_SPAN]",
)
@region_option(required=False, help="Stop when the trajectory leaves this box.")
@config_options(formats=tuple(OutputFormat), default=OutputFormat.csv)
@kit_command
def cli(run, system_file, at, t_span, region):
    """Integrate a trajectory and write it as t,x,y rows."""
    X = read_system(system_file)
    traj = integrate(
        X,
        parse_point(at),
        run.config.T_SPAN if t_span is None else t_span,
        tol=run.config.TOL,
        domain=parse_region(region) if region else None,
    )
    if run.fmt is OutputFormat.csv:
        run.write(trajectory_csv(traj))
        return
    run.emit(
        rp.Report(
            system=str(X),
            command=run.command,
            result={
                "start": rp.point(traj.states[0]),
                "end": rp.point(traj.end),
                "t_end": float(traj.times[-1]),
                "status": traj.status.value,
                "samples": len(traj),
            },
        )
    )
