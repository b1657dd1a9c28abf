import click

from os_dulac.exceptions import InputError
from os_dulac.flow import CrossingDirection, Section, cycle_csv, detect_limit_cycle
from os_dulac.options import (
    config_options,
    kit_command,
    parse_point,
    read_system,
    system_option,
)
from os_dulac.pipeline import EXIT_CYCLE
from os_dulac.report import OutputFormat, Report, render


@click.command()
@system_option
@click.option("--at", "at", required=True, help="Seed 'x,y' on the section.")
@click.option(
    "--normal",
    help="Section normal 'nx,ny'.  [default: the flow direction at the seed]",
)
@click.option(
    "--direction",
    type=click.Choice([d.value for d in CrossingDirection]),
    default=CrossingDirection.POSITIVE.value,
    show_default=True,
    help="Crossings that count as a return.",
)
@config_options(formats=tuple(OutputFormat))
@kit_command
def cli(run, system_file, at, normal, direction):
    """Find a periodic orbit as a fixed point of the Poincare return map.

    With --format csv and --out, the summary goes to <out>.json next to the CSV.
    """
    X = read_system(system_file)
    seed = parse_point(at)
    try:
        if normal:
            section = Section(seed, parse_point(normal), CrossingDirection(direction))
        else:
            section = Section.through(X, seed)
    except ValueError as e:
        raise InputError(f"no section through {at}: {e}") from e
    cycle = detect_limit_cycle(
        X, section, seed, max_iters=run.config.MAX_ITERS, tol=run.config.TOL
    )
    report = Report(
        system=str(X),
        command=run.command,
        result=cycle.summary(),
        notes=list(cycle.notes),
    )
    if run.fmt is OutputFormat.csv:
        run.write(cycle_csv(cycle))
        if run.out:
            run.write(render(report), f"{run.out}.json")
    else:
        run.emit(report)
    return EXIT_CYCLE
