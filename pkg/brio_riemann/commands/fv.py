"""
fv command: finite-volume run and comparison report
"""
import logging
from dataclasses import asdict
from pathlib import Path

import click

from brio_riemann.commands.common import build_config, handle_errors, output_option, state_options
from brio_riemann.core.output import emit, envelope, frame, metadata, to_csv
from brio_riemann.lab import fv_lab
from brio_riemann.solvers.limit_models import solve

logger = logging.getLogger(__name__)


def _floats(text: str) -> list:
    return [float(part) for part in text.split(",") if part.strip()]


@click.command("fv")
@state_options
@click.option("--x-min", type=float, default=None)
@click.option("--x-max", type=float, default=None)
@click.option("--cells", type=int, default=None)
@click.option("--cfl", type=float, default=None)
@click.option("--t-end", type=float, default=None)
@click.option("--snapshot", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="CSV of (x, u, v) at t-end")
@click.option("--times", type=str, default=None, help="Comma-separated times for delta_indicator")
@click.option("--refine", type=str, default=None, help="Comma-separated cell counts for an L1 study")
@click.option("--n-jobs", type=int, default=None)
@output_option
@handle_errors
def fv_command(ul, vl, ur, vr, eps1, eps2, x_min, x_max, cells, cfl, t_end, snapshot,
               times, refine, n_jobs, output):
    """Local Lax-Friedrichs run compared with the exact solution"""
    grid = fv_lab.Grid.default(x_min=x_min, x_max=x_max, n_cells=cells, cfl=cfl, t_end=t_end)
    config = build_config("fv", ul, vl, ur, vr, eps1, eps2, grid=asdict(grid))
    run = fv_lab.lax_friedrichs_run(config.left, config.right, config.params, grid)
    exact = solve(config.left, config.right, config.params)

    initial = fv_lab.initial_field(config.left, config.right, grid).totals()
    drift = (run.totals() + run.boundary_flux - initial).tolist()
    data = {
        "t": run.t,
        "steps": run.steps,
        "max_cfl_used": run.max_cfl_used,
        "delta_indicator": fv_lab.delta_indicator(run),
        "l1_error": None if exact.delta_shock is not None else fv_lab.l1_error(run, exact),
        "conservation_drift": drift,
        "warnings": run.warnings,
    }
    if times:
        data["indicator_history"] = fv_lab.indicator_history(
            config.left, config.right, config.params, grid, _floats(times))
    if refine:
        cells_list = [int(n) for n in _floats(refine)]
        data["refinement"] = fv_lab.refinement_study(
            config.left, config.right, config.params, cells_list, base=grid, n_jobs=n_jobs)
    if snapshot is not None:
        rows = [{"x": float(x), "u": float(u), "v": float(v)}
                for x, u, v in zip(grid.centers, run.u, run.v)]
        emit(to_csv(frame(rows, ("x", "u", "v"))), snapshot)
    meta = metadata(config.params, scheme=fv_lab.SCHEME_LABEL, grid=asdict(grid))
    emit(envelope(data, meta), output)
