"""
solve and sample commands
"""
import logging
from pathlib import Path
from typing import Optional

import click
import numpy as np

from brio_riemann.commands.common import (
    build_config,
    handle_errors,
    output_option,
    state_options,
    tol_option,
)
from brio_riemann.core.output import emit, envelope, frame, metadata, read_envelope, to_csv
from brio_riemann.models.domain import DeltaMarker, RiemannSolution
from brio_riemann.solvers.brio_solver import sample
from brio_riemann.solvers.limit_models import solve

logger = logging.getLogger(__name__)

SAMPLE_COLUMNS = ("xi", "u", "v", "is_delta", "strength_rate")


def solution_payload(sol: RiemannSolution) -> dict:
    region = sol.region or sol.region3
    return {
        "region": region.value if region is not None else None,
        "intermediate": list(sol.intermediate.as_tuple()) if sol.intermediate else None,
        "speeds": sol.speeds(),
        "solution": sol.model_dump(mode="json"),
    }


@click.command("solve")
@state_options
@tol_option
@output_option
@handle_errors
def solve_command(ul, vl, ur, vr, eps1, eps2, tol, output):
    """Exact Riemann solution as JSON"""
    config = build_config("solve", ul, vl, ur, vr, eps1, eps2, tol=tol, output=output)
    sol = solve(config.left, config.right, config.params, config.tol)
    emit(envelope(solution_payload(sol), metadata(sol.params)), config.output)


def sample_rows(sol: RiemannSolution, xi: np.ndarray, tol: Optional[float] = None) -> list:
    rows = []
    for value in xi:
        s = sample(sol, float(value), tol)
        if isinstance(s, DeltaMarker):
            rows.append({"xi": float(value), "u": s.u_delta, "v": float("nan"),
                         "is_delta": 1, "strength_rate": s.strength_rate})
        else:
            rows.append({"xi": float(value), "u": s.u, "v": s.v,
                         "is_delta": 0, "strength_rate": float("nan")})
    return rows


@click.command("sample")
@state_options
@click.option("--from-json", "from_json", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              default=None, help="Sample a solution written by solve")
@click.option("--xi-min", type=float, default=-2.0, show_default=True)
@click.option("--xi-max", type=float, default=2.0, show_default=True)
@click.option("--points", type=click.IntRange(min=2), default=201, show_default=True)
@click.option("--t", "t", type=float, default=None, help="Sample x in [x-min, x-max] at time t")
@click.option("--x-min", type=float, default=None)
@click.option("--x-max", type=float, default=None)
@tol_option
@output_option
@handle_errors
def sample_command(ul, vl, ur, vr, eps1, eps2, from_json, xi_min, xi_max, points, t,
                   x_min, x_max, tol, output):
    """CSV of (xi, u, v) across the wave fan, delta shocks as flagged rows"""
    if from_json is not None:
        payload = read_envelope(from_json)
        sol = RiemannSolution.model_validate(payload["data"]["solution"])
    else:
        config = build_config("sample", ul, vl, ur, vr, eps1, eps2, tol=tol)
        sol = solve(config.left, config.right, config.params, config.tol)

    columns = list(SAMPLE_COLUMNS)
    if t is not None:
        if not t > 0.0:
            raise click.BadParameter("--t must be positive", param_hint="--t")
        x = np.linspace(x_min if x_min is not None else xi_min * t,
                        x_max if x_max is not None else xi_max * t, points)
        rows = sample_rows(sol, x / t, tol)
        for row, xv in zip(rows, x):
            row["x"], row["t"] = float(xv), t
        columns = ["x", "t"] + columns
    else:
        rows = sample_rows(sol, np.linspace(xi_min, xi_max, points), tol)
    emit(to_csv(frame(rows, columns)), output)
