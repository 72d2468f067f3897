"""Shared pytest fixtures for the harvesting tests."""

import pytest

from harvesting.harvest import DetectorParams
from harvesting.quad import RegulatorPolicy

# Quadrature tolerance for comparisons against closed forms.
REFERENCE_TOL = 1e-10


@pytest.fixture
def unit_gap():
    return DetectorParams(gap=1.0)


@pytest.fixture
def half_gap():
    return DetectorParams(gap=0.5)


@pytest.fixture
def fine_regulator():
    """Regulator values small enough for 1e-4 agreement of the generic engine."""
    return RegulatorPolicy((4e-3, 2e-3, 1e-3, 5e-4), extrapolation_order=3)


@pytest.fixture
def config_file(tmp_path):
    """Write a flat ``key = value`` config file and return its path."""

    def write(text: str, name: str = "run.conf"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
