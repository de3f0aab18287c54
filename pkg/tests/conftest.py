"""Shared test fixtures for hkasym."""

import tempfile
from collections.abc import Generator
from pathlib import Path

import pytest

from hkasym.config import THREADS_ENV_VAR, BranchConfig, Config, QuadratureConfig
from hkasym.gtf import Sector


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Scratch directory removed after the test."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def temp_home(temp_dir: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """HOME pointed at a scratch directory, so ~/.hkasym is isolated."""
    home = temp_dir / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    return home


@pytest.fixture
def temp_cwd(temp_dir: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Working directory moved to a scratch project, so .hkasym.yaml is isolated."""
    project = temp_dir / "work"
    project.mkdir()
    monkeypatch.chdir(project)
    return project


@pytest.fixture
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Remove the thread override from the environment."""
    monkeypatch.delenv(THREADS_ENV_VAR, raising=False)


@pytest.fixture
def sample_config() -> Config:
    """A configuration with every section changed from its default."""
    return Config(
        output_format="json",
        threads=2,
        seed=7,
        branch=BranchConfig(r0=50.0),
        quadrature=QuadratureConfig(rel_tol=1e-9, direct_v_max=6.0),
    )


@pytest.fixture
def quad_cfg() -> QuadratureConfig:
    """Default quadrature settings."""
    return QuadratureConfig()


@pytest.fixture
def sector() -> Sector:
    """|z| > 10, |arg z| < pi/2, sampled on |arg z| <= pi/4."""
    return Sector()
