import numpy as np
import pytest

from framedcurves import curves
from framedcurves.core import Grid, UnitTangentField


@pytest.fixture(scope="session")
def helix4096():
    return curves.helix(n=4096)


@pytest.fixture(scope="session")
def circle4096():
    return curves.circle(radius=1.0, n=4096)


def analytic_circle_tangent(n, length=2 * np.pi):
    """Exact unit tangent (cos s, sin s, 0) on [0, length]."""
    grid = Grid(length, n)
    s = grid.nodes
    return UnitTangentField(grid, np.column_stack([np.cos(s), np.sin(s), np.zeros(n)]))


def analytic_helix_tangent(n, radius=1.0, pitch=1.0):
    c = np.hypot(radius, pitch)
    grid = Grid(2 * np.pi * c, n)
    phi = grid.nodes / c
    t = np.column_stack([-radius * np.sin(phi) / c, radius * np.cos(phi) / c, np.full(n, pitch / c)])
    return UnitTangentField(grid, t)
