"""
Shared CLI plumbing
Request model, common options and the error-to-exit-code mapping
"""
import functools
import logging
from pathlib import Path
from typing import Literal, Optional

import click
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from brio_riemann.core.errors import BrioError, DomainError, SolverError
from brio_riemann.models.domain import FluxParams, Schedule, State, SystemKind

logger = logging.getLogger(__name__)

EXIT_VALIDATION = 2
EXIT_SOLVER = 3


class RunConfig(BaseModel):
    """Validated request of one CLI invocation"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    subcommand: str
    left: State
    right: State
    params: FluxParams
    schedule: Optional[Schedule] = None
    grid: Optional[dict] = None
    output_format: Literal["json", "csv"] = "json"
    output: Optional[Path] = None
    tol: Optional[float] = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def _check_densities(self) -> "RunConfig":
        strict = self.params.system is not SystemKind.TRANSPORT
        for name, state in (("left", self.left), ("right", self.right)):
            if strict and state.v <= 0.0:
                raise ValueError(
                    f"{name} density must be positive for the {self.params.system.value} system, "
                    f"got {state.v}"
                )
            if state.v < 0.0:
                raise ValueError(f"{name} density must be nonnegative, got {state.v}")
        return self


def build_config(subcommand: str, ul: Optional[float], vl: Optional[float],
                 ur: Optional[float], vr: Optional[float], eps1: float, eps2: float,
                 **fields) -> RunConfig:
    if None in (ul, vl, ur, vr):
        raise click.UsageError("--ul, --vl, --ur and --vr are required")
    return RunConfig(
        subcommand=subcommand,
        left=State(u=ul, v=vl),
        right=State(u=ur, v=vr),
        params=FluxParams(eps1=eps1, eps2=eps2),
        **fields,
    )


def state_options(func):
    """--ul/--vl/--ur/--vr/--eps1/--eps2"""
    options = [
        click.option("--ul", type=float, help="Left velocity u-"),
        click.option("--vl", type=float, help="Left density v-"),
        click.option("--ur", type=float, help="Right velocity u+"),
        click.option("--vr", type=float, help="Right density v+"),
        click.option("--eps1", type=float, default=0.0, show_default=True, help="Flux coefficient eps1"),
        click.option("--eps2", type=float, default=0.0, show_default=True, help="Flux coefficient eps2"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


output_option = click.option(
    "--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None,
    help="Write to this file instead of stdout",
)
tol_option = click.option("--tol", type=float, default=None, help="Root-finding tolerance")


def _describe(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        return f"{where}: {first['msg']}" if where else first["msg"]
    return str(exc)


def handle_errors(func):
    """Map domain errors to exit 2 and solver errors to exit 3"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (DomainError, ValidationError, ValueError) as e:
            logger.error(f"invalid input: {e}")
            click.echo(f"error: {_describe(e)}", err=True)
            raise click.exceptions.Exit(EXIT_VALIDATION)
        except SolverError as e:
            logger.error(f"solver failure: {e}")
            click.echo(f"error: {e}", err=True)
            raise click.exceptions.Exit(EXIT_SOLVER)
        except BrioError as e:
            click.echo(f"error: {e}", err=True)
            raise click.exceptions.Exit(EXIT_SOLVER)
    return wrapper
