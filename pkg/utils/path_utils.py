import os
from typing import Optional

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))

DEFAULT_SOLVER_CONFIG = os.path.join("configs", "solver_config.yaml")
DEFAULT_BENCH_SUITE = os.path.join("configs", "bench_suite.yaml")


def ensure_directory_exists(path: str, base_dir: Optional[str] = None) -> str:
    """Create ``path`` (resolved against ``base_dir`` when given) and return it absolute.

    Args:
        path: Output directory, relative or absolute
        base_dir: Directory that a relative ``path`` hangs off

    Returns:
        The absolute directory path
    """
    target = os.path.abspath(os.path.join(base_dir, path) if base_dir else path)
    os.makedirs(target, exist_ok=True)
    return target


def project_path(*parts: str) -> str:
    """Path below the repository root (the directory holding ``configs/``)"""
    return os.path.join(PROJECT_ROOT, *parts)


def default_solver_config() -> Optional[str]:
    """The bundled solver config, or None when it is missing."""
    path = project_path(DEFAULT_SOLVER_CONFIG)
    return path if os.path.exists(path) else None


def fixture_path(name: str) -> str:
    return project_path("fixtures", name)
