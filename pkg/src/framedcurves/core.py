"""Uniform arc-length grids, sampled fields and their calculus.

Everything downstream works on a uniform grid ``0 = s_0 < ... < s_{n-1} = L``.
Derivatives use second-order central differences with second-order one-sided
stencils at the two ends; integrals use the trapezoidal rule.

The end stencil is the four-point one whose leading error ``h^2 f'''/6``
equals that of the central stencil, so the error of a derivative stays smooth
across the ends and nested differences (curvature, then torsion) remain
accurate up to the boundary. Nesting the three-point end stencil, with error
``-h^2 f'''/3``, leaves O(1) torsion errors at the end nodes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import FramingError, NotUnitSpeed, TooFewPoints, ZeroLengthSegment

#: Nodes excluded at each end when a quantity has gone through several nested
#: finite differences; the one-sided end stencils feed O(h) errors inward.
BOUNDARY_MARGIN = 3

#: Default tolerance on |x'| - 1 for curves entering the framing pipelines.
SPEED_TOL = 1e-4


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``n_samples`` nodes on ``[0, length]``."""

    length: float
    n_samples: int

    def __post_init__(self):
        if not self.length > 0:
            raise FramingError(f"grid length must be positive, got {self.length}")
        if self.n_samples < 3:
            raise TooFewPoints(f"need at least 3 samples, got {self.n_samples}")

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.n_samples)

    @property
    def spacing(self) -> float:
        return self.length / (self.n_samples - 1)

    @classmethod
    def from_nodes(cls, s, rtol=1e-9) -> "Grid":
        """Build a grid from explicit nodes, which must start at 0 and be uniform."""
        s = np.asarray(s, dtype=float)
        if s.ndim != 1 or len(s) < 3:
            raise TooFewPoints("need at least 3 nodes")
        L = s[-1] - s[0]
        if abs(s[0]) > rtol * max(abs(L), 1.0):
            raise FramingError(f"grid must start at s=0, got s[0]={s[0]}")
        grid = cls(float(s[-1]), len(s))
        if np.max(np.abs(s - grid.nodes)) > rtol * grid.length:
            raise FramingError("grid nodes are not uniformly spaced")
        return grid


def default_eps_kappa(grid: Grid) -> float:
    """Curvature threshold below which normals and torsion are masked."""
    return 1e-6 / grid.length


@dataclass(frozen=True)
class VectorField:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n_samples, 3):
            raise FramingError(
                f"expected values of shape ({self.grid.n_samples}, 3), got {values.shape}"
            )
        object.__setattr__(self, "values", values)

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.values, axis=1)


class UnitTangentField(VectorField):
    """A vector field whose samples all have unit length (within 1e-9)."""

    NORM_TOL = 1e-9

    def __post_init__(self):
        super().__post_init__()
        dev = np.max(np.abs(self.norms() - 1.0))
        if not dev <= self.NORM_TOL:
            raise NotUnitSpeed(dev, self.NORM_TOL)


@dataclass(frozen=True)
class SampledCurve:
    """Positions sampled on a uniform arc-length grid."""

    grid: Grid
    points: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.shape != (self.grid.n_samples, 3):
            raise FramingError(
                f"expected points of shape ({self.grid.n_samples}, 3), got {points.shape}"
            )
        object.__setattr__(self, "points", points)

    @classmethod
    def from_arrays(cls, s, points) -> "SampledCurve":
        return cls(Grid.from_nodes(s), points)

    def reversed(self) -> "SampledCurve":
        return SampledCurve(self.grid, self.points[::-1].copy())


# Weights on f(0), f(h), f(2h), f(3h).
_END_STENCIL = np.array([-2.0, 3.5, -2.0, 0.5])


def derivative(values, h: float) -> np.ndarray:
    """Second-order finite-difference derivative along the first axis."""
    values = np.asarray(values, dtype=float)
    if values.shape[0] < 3:
        raise TooFewPoints("need at least 3 samples to differentiate")
    out = np.gradient(values, h, axis=0, edge_order=2)
    if values.shape[0] >= 4:
        out[0] = np.tensordot(_END_STENCIL, values[:4], axes=1) / h
        out[-1] = -np.tensordot(_END_STENCIL, values[:-5:-1], axes=1) / h
    return out


def differentiate(field: VectorField) -> VectorField:
    return VectorField(field.grid, derivative(field.values, field.grid.spacing))


def maximal_runs(mask) -> list[tuple[int, int]]:
    """Half-open index ranges ``(start, stop)`` of the maximal True runs of ``mask``."""
    mask = np.asarray(mask, dtype=bool)
    padded = np.concatenate([[False], mask, [False]])
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    return list(zip(edges[::2].tolist(), edges[1::2].tolist()))


def differentiate_runs(values, mask, h: float) -> np.ndarray:
    """Differentiate ``values`` separately inside each maximal run of ``mask``.

    Runs of three or more nodes use the usual second-order stencils, runs of two
    a single forward difference, isolated nodes and masked nodes get NaN.
    """
    values = np.asarray(values, dtype=float)
    out = np.full(values.shape, np.nan)
    for a, b in maximal_runs(mask):
        if b - a >= 3:
            out[a:b] = derivative(values[a:b], h)
        elif b - a == 2:
            out[a:b] = (values[a + 1] - values[a]) / h
    return out


def cumulative_integral(field: VectorField, initial) -> VectorField:
    """Trapezoidal running integral of ``field`` starting from ``initial`` at s=0."""
    initial = np.asarray(initial, dtype=float).reshape(3)
    running = cumulative_trapezoid(field.values, dx=field.grid.spacing, axis=0, initial=0.0)
    return VectorField(field.grid, running + initial)


def interior(n: int, margin: int = BOUNDARY_MARGIN) -> slice:
    return slice(margin, n - margin)


def speed_deviation(curve: SampledCurve) -> np.ndarray:
    """Nodewise ``| |x'| - 1 |`` of the finite-difference tangent."""
    t = derivative(curve.points, curve.grid.spacing)
    return np.abs(np.linalg.norm(t, axis=1) - 1.0)


def check_unit_speed(curve: SampledCurve, tol: float = 1e-6) -> float:
    """Raise NotUnitSpeed unless interior tangent norms lie in ``[1-tol, 1+tol]``."""
    dev = float(np.max(speed_deviation(curve)[1:-1]))
    if not dev <= tol:
        raise NotUnitSpeed(dev, tol)
    return dev


def unit_tangent(curve: SampledCurve, speed_tol: float = SPEED_TOL) -> UnitTangentField:
    """Finite-difference tangent of an arc-length curve, normalized node by node.

    The raw tangent norm must be within ``speed_tol`` of one everywhere
    (endpoints included); normalization only removes the residual
    discretization error.
    """
    t = derivative(curve.points, curve.grid.spacing)
    norms = np.linalg.norm(t, axis=1)
    dev = float(np.max(np.abs(norms - 1.0)))
    if not dev <= speed_tol:
        raise NotUnitSpeed(dev, speed_tol)
    return UnitTangentField(curve.grid, t / norms[:, None])


def resample_arclength(curve, n_out: int) -> SampledCurve:
    """Resample a polyline uniformly in cumulative chord length.

    Parameters
    ----------
    curve : SampledCurve or array_like, shape (m, 3)
        Input samples in order. Only the point sequence is used; any
        existing parametrization is discarded.
    n_out : int
        Number of output samples (at least 3).

    Returns
    -------
    SampledCurve
        Points linearly interpolated along the polyline at equal chord-length
        spacing. The grid length is the total chord length and both endpoints
        are kept exactly.
    """
    points = curve.points if isinstance(curve, SampledCurve) else np.asarray(curve, dtype=float)
    if points.ndim != 2 or points.shape[1] != 3:
        raise FramingError(f"expected points of shape (m, 3), got {points.shape}")
    if len(points) < 3:
        raise TooFewPoints(f"need at least 3 input points, got {len(points)}")
    if n_out < 3:
        raise TooFewPoints(f"need n_out >= 3, got {n_out}")
    seg = np.linalg.norm(np.diff(points, axis=0), axis=1)
    if np.any(seg == 0.0):
        i = int(np.flatnonzero(seg == 0.0)[0])
        raise ZeroLengthSegment(f"points {i} and {i + 1} coincide")
    chord = np.concatenate([[0.0], np.cumsum(seg)])
    grid = Grid(float(chord[-1]), n_out)
    s = grid.nodes
    out = np.column_stack([np.interp(s, chord, points[:, j]) for j in range(3)])
    out[0], out[-1] = points[0], points[-1]
    return SampledCurve(grid, out)


@dataclass(frozen=True)
class FrameField:
    """Per-node triad ``{t, d1, d2}`` (or ``{t, n, b}``) on a grid."""

    grid: Grid
    t: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    def __post_init__(self):
        for name in ("t", "d1", "d2"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (self.grid.n_samples, 3):
                raise FramingError(f"{name}: expected shape ({self.grid.n_samples}, 3), got {v.shape}")
            object.__setattr__(self, name, v)

    def matrices(self) -> np.ndarray:
        """Stack of shape (n, 3, 3) with columns t, d1, d2."""
        return np.stack([self.t, self.d1, self.d2], axis=2)

    def gram_deviation(self) -> np.ndarray:
        """Nodewise max-abs entry of ``F^T F - I``."""
        F = self.matrices()
        G = np.einsum("nij,nik->njk", F, F) - np.eye(3)
        return np.max(np.abs(G), axis=(1, 2))

    def determinants(self) -> np.ndarray:
        return np.linalg.det(self.matrices())
