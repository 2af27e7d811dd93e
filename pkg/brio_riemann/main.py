"""
brio-riemann command line
Exact Riemann solutions, limit sweeps, weak-form checks and finite-volume runs
"""
import logging
import sys
from typing import List, Optional

import click

from brio_riemann import __version__
from brio_riemann.commands.fv import fv_command
from brio_riemann.commands.solve import sample_command, solve_command
from brio_riemann.commands.sweep import sweep_both_command, sweep_eps1_command
from brio_riemann.commands.verify import verify_command
from brio_riemann.core.config import settings

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """Log to stderr so stdout carries data only"""
    logging.basicConfig(
        level=getattr(logging, (level or settings.log_level).upper()),
        format=settings.log_format,
        stream=sys.stderr,
        force=True,
    )


@click.group()
@click.version_option(__version__, prog_name="brio-riemann")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"],
              case_sensitive=False), default=None, help="Override BRIO_RIEMANN_LOG_LEVEL")
def cli(log_level: Optional[str]) -> None:
    """Exact Riemann solvers for the perturbed Brio system and its limits"""
    configure_logging(log_level)


for command in (solve_command, sample_command, sweep_both_command, sweep_eps1_command,
                verify_command, fv_command):
    cli.add_command(command)


def run_cli(args: Optional[List[str]] = None) -> int:
    """Run the CLI and return its exit code"""
    try:
        cli.main(args=args, prog_name="brio-riemann")
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
