"""
sweep-both and sweep-eps1 commands
"""
import logging
from pathlib import Path
from typing import List, Optional

import click

from brio_riemann.commands.common import (
    build_config,
    handle_errors,
    output_option,
    state_options,
    tol_option,
)
from brio_riemann.core.config import settings
from brio_riemann.core.output import emit, envelope, frame, metadata, to_csv
from brio_riemann.lab import limits_lab
from brio_riemann.models.domain import CSV_COLUMNS, Schedule, ScheduleMode, SweepRecord

logger = logging.getLogger(__name__)


def schedule_options(func):
    options = [
        click.option("--start", type=float, default=None, help="First eps of the schedule"),
        click.option("--ratio", type=float, default=None, help="Geometric ratio in (0, 1)"),
        click.option("--count", type=int, default=None, help="Number of schedule points"),
        click.option("--floor", type=float, default=None, help="Drop points below this eps"),
        click.option("--format", "output_format", type=click.Choice(["csv", "json"]),
                     default="csv", show_default=True),
        click.option("--summary", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="Write the limit-estimate JSON here"),
        click.option("--n-jobs", type=int, default=None, help="Parallel workers"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _schedule(mode: ScheduleMode, start, ratio, count, floor) -> Schedule:
    return Schedule(
        eps_start=start if start is not None else settings.eps_start,
        ratio=ratio if ratio is not None else settings.eps_ratio,
        count=count if count is not None else settings.eps_count,
        floor=floor if floor is not None else settings.eps_floor,
        mode=mode,
    )


def _write(records: List[SweepRecord], summary: dict, output_format: str,
           output: Optional[Path], summary_path: Optional[Path], meta: dict) -> None:
    if output_format == "csv":
        rows = [r.model_dump(mode="json") for r in records]
        emit(to_csv(frame(rows, CSV_COLUMNS)), output)
        if summary_path is not None:
            emit(envelope(summary, meta), summary_path)
        return
    data = {"records": [r.model_dump(mode="json") for r in records], "summary": summary}
    emit(envelope(data, meta), output)
    if summary_path is not None:
        emit(envelope(summary, meta), summary_path)


@click.command("sweep-both")
@state_options
@schedule_options
@tol_option
@output_option
@handle_errors
def sweep_both_command(ul, vl, ur, vr, eps1, eps2, start, ratio, count, floor, output_format,
                       summary, n_jobs, tol, output):
    """Sweep eps1 = eps2 -> 0 toward the transport limit"""
    sch = _schedule(ScheduleMode.BOTH_EQUAL, start, ratio, count, floor)
    config = build_config("sweep-both", ul, vl, ur, vr, sch.eps_start, sch.eps_start,
                          schedule=sch, output_format=output_format, output=output, tol=tol)
    records = limits_lab.sweep_both(config.left, config.right, sch, tol=config.tol, n_jobs=n_jobs)
    report = limits_lab.summarize_sweep(config.left, config.right, records)
    meta = metadata(config.params, mode=sch.mode.value, schedule=sch.model_dump(mode="json"))
    _write(records, report, output_format, output, summary, meta)


@click.command("sweep-eps1")
@state_options
@schedule_options
@tol_option
@output_option
@handle_errors
def sweep_eps1_command(ul, vl, ur, vr, eps1, eps2, start, ratio, count, floor, output_format,
                       summary, n_jobs, tol, output):
    """Sweep eps1 -> 0 at fixed eps2 toward the one-parameter limit"""
    sch = _schedule(ScheduleMode.EPS1_ONLY, start, ratio, count, floor)
    config = build_config("sweep-eps1", ul, vl, ur, vr, sch.eps_start, eps2,
                          schedule=sch, output_format=output_format, output=output, tol=tol)
    records = limits_lab.sweep_eps1(config.left, config.right, eps2, sch,
                                    tol=config.tol, n_jobs=n_jobs)
    report = limits_lab.summarize_sweep(config.left, config.right, records,
                                        eps2=eps2 if eps2 > 0.0 else None)
    meta = metadata(config.params, mode=sch.mode.value, schedule=sch.model_dump(mode="json"))
    _write(records, report, output_format, output, summary, meta)
