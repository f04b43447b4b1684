"""Analytic test curves sampled by arc length."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Grid, SampledCurve, resample_arclength
from .errors import FramingError

KINDS = ("line", "circle", "helix", "trefoil")

# Trefoil has no closed-form arc length, so it is densely sampled in its
# angle parameter and resampled by chord length.
TREFOIL_OVERSAMPLE = 64


def line(length: float = 1.0, n: int = 101) -> SampledCurve:
    grid = Grid(length, n)
    s = grid.nodes
    return SampledCurve(grid, np.column_stack([s, np.zeros(n), np.zeros(n)]))


def circle(radius: float = 1.0, n: int = 1024) -> SampledCurve:
    """Full circle of the given radius in the xy-plane, starting at (radius, 0, 0)."""
    grid = Grid(2 * np.pi * radius, n)
    phi = grid.nodes / radius
    pts = np.column_stack([radius * np.cos(phi), radius * np.sin(phi), np.zeros(n)])
    return SampledCurve(grid, pts)


def helix_speed(radius: float, pitch: float) -> float:
    return float(np.hypot(radius, pitch))


def helix(radius: float = 1.0, pitch: float = 1.0, turns: float = 1.0, n: int = 4096) -> SampledCurve:
    """Right-handed helix ``(a cos(s/c), a sin(s/c), b s/c)`` with ``c = sqrt(a^2 + b^2)``.

    ``pitch`` is the rise ``b`` per radian of winding.
    """
    c = helix_speed(radius, pitch)
    grid = Grid(2 * np.pi * c * turns, n)
    phi = grid.nodes / c
    pts = np.column_stack([radius * np.cos(phi), radius * np.sin(phi), pitch * phi])
    return SampledCurve(grid, pts)


def helix_invariants(radius: float = 1.0, pitch: float = 1.0) -> tuple[float, float]:
    """Curvature ``a/c^2`` and torsion magnitude ``b/c^2``."""
    c2 = radius**2 + pitch**2
    return radius / c2, pitch / c2


def trefoil(scale: float = 1.0, n: int = 4096) -> SampledCurve:
    """Trefoil knot ``(sin p + 2 sin 2p, cos p - 2 cos 2p, -sin 3p)`` scaled by ``scale``."""
    p = np.linspace(0.0, 2 * np.pi, TREFOIL_OVERSAMPLE * n)
    pts = scale * np.column_stack(
        [np.sin(p) + 2 * np.sin(2 * p), np.cos(p) - 2 * np.cos(2 * p), -np.sin(3 * p)]
    )
    return resample_arclength(pts, n)


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    n_samples: int = 1024
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FramingError(f"unknown curve kind {self.kind!r}; expected one of {KINDS}")
        if self.n_samples < 3:
            raise FramingError("n_samples must be at least 3")
        for key, value in self.parameters.items():
            if key != "pitch" and not value > 0:
                raise FramingError(f"{key} must be positive, got {value}")
            if key == "pitch" and value < 0:
                raise FramingError(f"pitch must be non-negative, got {value}")


def generate(spec: CurveSpec) -> SampledCurve:
    builders = {"line": line, "circle": circle, "helix": helix, "trefoil": trefoil}
    return builders[spec.kind](n=spec.n_samples, **spec.parameters)
