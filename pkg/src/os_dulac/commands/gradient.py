import click

from os_dulac.options import config_options, kit_command, parse_region, region_option
from os_dulac.parser import parse_poly
from os_dulac.pipeline import EXIT_CERTIFIED, EXIT_INCONCLUSIVE
from os_dulac.report import Report
from os_dulac.synthesis import gradient_coverage, gradient_field, gradient_multipliers


@click.command()
@click.option("--potential", required=True, help="Potential V of X = grad V.")
@region_option()
@click.option("--tiles", default=1, show_default=True, type=click.IntRange(min=1))
@config_options()
@kit_command
def cli(run, potential, region, tiles):
    """Certify the gradient multipliers exp(V), exp(-V) and V on a region."""
    V = parse_poly(potential)
    box = parse_region(region)
    coverage = gradient_coverage(
        V, box, depth=run.config.DEPTH, tiles=tiles, workers=run.config.WORKERS
    )
    run.emit(
        Report(
            system=str(gradient_field(V)),
            command=run.command,
            result={
                "potential": str(V),
                "carriers": {m.label: str(m.carrier) for m in gradient_multipliers(V)},
                "cells": [
                    {"box": str(cell), "certified_by": list(labels)}
                    for cell, labels in coverage.cells
                ],
                "covered": coverage.covered,
            },
            notes=["only the certified cells are covered; nothing is claimed outside them"],
        )
    )
    return EXIT_CERTIFIED if coverage.covered else EXIT_INCONCLUSIVE
