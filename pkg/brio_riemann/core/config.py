"""
Configuration module for brio-riemann
Handles environment variables and numerical defaults
"""
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical settings loaded from BRIO_RIEMANN_* environment variables"""

    model_config = SettingsConfigDict(
        env_prefix="BRIO_RIEMANN_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Root finding (BRIO_RIEMANN_TOL overrides the default tolerance on v*)
    tol: float = Field(default=1e-12, gt=0.0)
    abs_tol: float = Field(default=1e-12, gt=0.0)
    rel_tol: float = Field(default=1e-10, gt=0.0)
    tie_tol: float = Field(default=1e-12, ge=0.0)
    max_iter: int = Field(default=200, gt=0)
    bracket_doublings: int = Field(default=1024, gt=0)

    # Quadrature
    quad_tol: float = Field(default=1e-10, gt=0.0)
    report_tol: float = Field(default=1e-8, gt=0.0)
    quad_limit: int = Field(default=200, gt=0)

    # Limit schedules
    eps_start: float = Field(default=1e-1, gt=0.0)
    eps_ratio: float = Field(default=0.25, gt=0.0, lt=1.0)
    eps_count: int = Field(default=20, gt=0)
    eps_floor: float = Field(default=1e-12, gt=0.0)

    # Finite-volume grid
    grid_x_min: float = Field(default=-2.0, lt=0.0)
    grid_x_max: float = Field(default=2.0, gt=0.0)
    grid_cells: int = Field(default=400, ge=10)
    grid_cfl: float = Field(default=0.45, gt=0.0, lt=1.0)
    grid_t_end: float = Field(default=0.4, gt=0.0)

    # Concurrency and logging
    n_jobs: int = Field(default=1)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# Global settings instance
settings = Settings()


def get_solver_config() -> dict:
    """Get root-finding configuration"""
    return {
        "tol": settings.tol,
        "abs_tol": settings.abs_tol,
        "rel_tol": settings.rel_tol,
        "tie_tol": settings.tie_tol,
        "max_iter": settings.max_iter,
        "bracket_doublings": settings.bracket_doublings,
    }


def get_quadrature_config() -> dict:
    """Get weak-residual quadrature configuration"""
    return {
        "quad_tol": settings.quad_tol,
        "report_tol": settings.report_tol,
        "quad_limit": settings.quad_limit,
    }


def get_schedule_defaults() -> dict:
    """Get default geometric schedule parameters"""
    return {
        "eps_start": settings.eps_start,
        "ratio": settings.eps_ratio,
        "count": settings.eps_count,
        "floor": settings.eps_floor,
    }


def get_grid_defaults() -> dict:
    """Get default finite-volume grid"""
    return {
        "x_min": settings.grid_x_min,
        "x_max": settings.grid_x_max,
        "n_cells": settings.grid_cells,
        "cfl": settings.grid_cfl,
        "t_end": settings.grid_t_end,
    }


def resolve(value, default):
    """Return value unless it is None"""
    return default if value is None else value


def within_tol(a: float, b: float, abs_tol: Optional[float] = None,
               rel_tol: Optional[float] = None) -> bool:
    """|a - b| <= abs_tol + rel_tol * max(|a|, |b|), settings values when None"""
    abs_tol = resolve(abs_tol, settings.abs_tol)
    rel_tol = resolve(rel_tol, settings.rel_tol)
    return abs(a - b) <= abs_tol + rel_tol * max(abs(a), abs(b))
