"""Shared test fixtures for equidist tests."""

import numpy as np
import pytest

from equidist.config import EquidistSettings
from equidist.sequences import SequenceSpec


@pytest.fixture
def settings():
    """Default settings, independent of EQUIDIST_* variables in the environment."""
    return EquidistSettings(
        workers=1,
        chunk_size=1024,
        target_bits=60,
        precision_margin_bits=96,
        precision_cap_bits=2**24,
        exact_rational_path=True,
        exact_cost_ratio=1.0,
        report_dir="reports",
    )


@pytest.fixture
def rng():
    """Seeded generator for reproducible random samples."""
    return np.random.default_rng(42)


@pytest.fixture
def uniform_sample(rng):
    """1000 uniform points in [0, 1)."""
    return rng.random(1000)


@pytest.fixture
def three_halves():
    """x_n = (3/2)^n."""
    return SequenceSpec(alpha="1", beta="3/2")


@pytest.fixture
def golden():
    """x_n = phi^n."""
    return SequenceSpec(alpha="1", beta="phi")
