"""
verify command: weak-form residual report
"""
import logging

import click
import numpy as np

from brio_riemann.commands.common import build_config, handle_errors, output_option, state_options
from brio_riemann.core.config import get_quadrature_config, settings
from brio_riemann.core.output import emit, envelope, metadata
from brio_riemann.lab.weak_verify import perturb_delta, random_bumps, weak_residual
from brio_riemann.solvers.limit_models import solve

logger = logging.getLogger(__name__)


@click.command("verify")
@state_options
@click.option("--bumps", "n_bumps", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--perturb-sigma", type=float, default=0.0, show_default=True,
              help="Shift the delta-shock speed before testing")
@click.option("--quad-tol", type=float, default=None)
@click.option("--n-jobs", type=int, default=None)
@output_option
@handle_errors
def verify_command(ul, vl, ur, vr, eps1, eps2, n_bumps, seed, perturb_sigma, quad_tol,
                   n_jobs, output):
    """Quadrature residuals of the exact solution against random bumps"""
    config = build_config("verify", ul, vl, ur, vr, eps1, eps2)
    sol = solve(config.left, config.right, config.params)
    if perturb_sigma:
        sol = perturb_delta(sol, d_sigma=perturb_sigma)
    bumps = random_bumps(np.random.default_rng(seed), n_bumps)
    report = weak_residual(sol, bumps, quad_tol=quad_tol, n_jobs=n_jobs)
    data = {
        "max_abs": report.max_abs,
        "passed": report.passed(),
        "bound": settings.report_tol,
        "per_bump": [
            {"center": list(b.center), "radii": list(b.radii), **r}
            for b, r in zip(bumps, report.per_bump)
        ],
        "quadrature_warnings": report.trace,
    }
    emit(envelope(data, metadata(sol.params, quadrature=get_quadrature_config(), seed=seed)),
         output)
