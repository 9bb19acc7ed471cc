"""
Shared fixtures: small graphs with hand-derived spectra and profiles.
"""

import sys
from pathlib import Path

import pytest

# Tests import modules the same way the CLI does
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from graphs.core import Family, FamilySpec, generate  # noqa: E402


@pytest.fixture
def k4():
    return generate(FamilySpec(Family.COMPLETE, n=4))


@pytest.fixture
def k8():
    return generate(FamilySpec(Family.COMPLETE, n=8))


@pytest.fixture
def q3():
    return generate(FamilySpec(Family.HYPERCUBE, k=3))


@pytest.fixture
def c6():
    return generate(FamilySpec(Family.CYCLE, n=6))


@pytest.fixture
def cu23():
    """Two disjoint triangles"""
    return generate(FamilySpec(Family.CLIQUE_UNION, m=2, k=3))
