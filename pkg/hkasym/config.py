"""Configuration management for hkasym."""

import math
import os
import re
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import BaseModel, Field

THREADS_ENV_VAR = "ASYMP_THREADS"


class BranchConfig(BaseModel):
    """Sectors that select the branch of the inverse of mu."""

    r0: float = Field(default=100.0, gt=0, description="Smallest |4v/u| in the sector around the positive axis")
    eta0: float = Field(default=math.pi / 8, gt=0, lt=math.pi / 4, description="Half-opening of that sector")
    r0_prime: float = Field(default=0.5, gt=0, lt=1, description="Radius of the image disk around pi")
    eta0_prime: float = Field(default=math.pi / 16, gt=0, lt=math.pi / 8, description="Half-opening for arg(eps)")


class QuadratureConfig(BaseModel):
    """Tolerances and limits shared by the kernel evaluators."""

    rel_tol: float = Field(default=1e-10, gt=0, le=1e-3, description="Relative target of every quadrature")
    abs_floor: float = Field(default=-40.0, lt=0, description="Log-scale below the envelope peak that is dropped")
    max_panels: int = Field(default=4096, ge=8, description="Cap on panels (and on trapezoid nodes / 32)")
    truncation_margin: float = Field(default=40.0, gt=0, description="Decay e-folds kept by integrate_key2")
    stall_tol: float = Field(default=1e-7, gt=0, description="Error estimate accepted from a stalled refinement")
    circle_nodes: int = Field(default=512, ge=16, description="Initial trapezoid nodes on the saddle circle")
    direct_v_max: float = Field(default=8.0, gt=0, description="Largest v the direct route accepts")
    strip_delta: float = Field(default=0.2, gt=0, lt=1, description="Half-width of the complex-v strip")
    contour_x_min: float = Field(default=8.0, gt=0, description="Smallest 4v/u the contour route accepts")
    recurrence_rel_tol: float = Field(default=1e-5, gt=0, description="Richardson tolerance of derive_m_plus_2")


class GtfConfig(BaseModel):
    """Sampling parameters of the good-test-function checks."""

    nodes: int = Field(default=256, ge=16)
    node_tol: float = Field(default=1e-10, gt=0)
    max_nodes: int = Field(default=65536, ge=16)
    rings_per_decade: int = Field(default=8, ge=1)
    arg_samples: int = Field(default=5, ge=1)
    decades: int = Field(default=4, ge=1)
    slope_threshold: float = Field(default=0.1, gt=0)
    oscillation_threshold: float = Field(default=0.5, gt=0)
    oscillation_samples_per_decade: int = Field(default=64, ge=4)


class Config(BaseModel):
    """Resolved settings for every command."""

    output_format: str = Field(default="csv", pattern="^(csv|json)$", description="Table format")
    threads: Optional[int] = Field(default=None, ge=1, description="Cap on sweep parallelism")
    seed: int = Field(default=0, description="Seed for randomized sample jitter")
    branch: BranchConfig = Field(default_factory=BranchConfig)
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    gtf: GtfConfig = Field(default_factory=GtfConfig)

    def worker_count(self) -> int:
        """Number of workers a parameter sweep may use."""
        if self.threads:
            return self.threads
        return min(4, os.cpu_count() or 1)


_PLACEHOLDER = re.compile(r"\$\{([^}]+)\}")


def _expand_env(value: str) -> str:
    """Substitute ${NAME} placeholders from the environment (unset names become "")."""
    return _PLACEHOLDER.sub(lambda match: os.environ.get(match.group(1), ""), value)


def _expand_env_tree(data: dict) -> dict:
    """_expand_env applied to every string leaf of a nested mapping."""
    expanded: dict = {}
    for key, value in data.items():
        if isinstance(value, str):
            expanded[key] = _expand_env(value)
        elif isinstance(value, dict):
            expanded[key] = _expand_env_tree(value)
        else:
            expanded[key] = value
    return expanded


def _deep_merge(base: dict, override: dict) -> dict:
    """Merge override into base, descending into nested sections."""
    merged = dict(base)
    for key, value in override.items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _read_yaml(path: Path) -> dict:
    with open(path) as f:
        return _expand_env_tree(yaml.safe_load(f) or {})


def _write_yaml(config: Config, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        yaml.safe_dump(config.model_dump(exclude_none=True), f, default_flow_style=False)


def get_global_config_path() -> Path:
    """~/.hkasym/config.yaml"""
    return Path.home() / ".hkasym" / "config.yaml"


def get_project_config_path() -> Path:
    """./.hkasym.yaml"""
    return Path.cwd() / ".hkasym.yaml"


def load_config() -> Config:
    """Defaults, then the global file, then the project file, then ASYMP_THREADS."""
    layers: dict = {}
    for path in (get_global_config_path(), get_project_config_path()):
        if path.exists():
            layers = _deep_merge(layers, _read_yaml(path))

    threads = os.environ.get(THREADS_ENV_VAR)
    if threads:
        layers["threads"] = int(threads)

    return Config(**layers)


def set_config_value(config: Config, dotted_key: str, value: str) -> Config:
    """Return a copy of config with one (possibly nested) key replaced.

    Raises:
        KeyError: if the key does not name a config field
    """
    parts = dotted_key.replace("-", "_").split(".")
    data: dict[str, Any] = config.model_dump()
    node = data
    for part in parts[:-1]:
        if not isinstance(node.get(part), dict):
            raise KeyError(dotted_key)
        node = node[part]
    if parts[-1] not in node or isinstance(node[parts[-1]], dict):
        raise KeyError(dotted_key)
    node[parts[-1]] = yaml.safe_load(value)
    return Config(**data)


def save_global_config(config: Config) -> None:
    _write_yaml(config, get_global_config_path())


def save_project_config(config: Config) -> None:
    _write_yaml(config, get_project_config_path())
