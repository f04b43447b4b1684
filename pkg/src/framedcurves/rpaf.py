"""Relatively parallel adapted frames (Bishop frames) and general framed curves.

A framed curve carries an orthonormal triad ``{t, d1, d2}`` obeying::

    t'  =  u2 d1 - u1 d2
    d1' = -u2 t  + u3 d2
    d2' =  u1 t  - u3 d1

With ``u3 = 0`` the normals only turn along the tangent and the frame is
relatively parallel. In the moving frame the generator is the skew matrix of
the angular velocity ``(u3, u1, u2)``.

Two directions are provided. ``propagate_frame`` integrates the system from
prescribed densities. ``solve_volterra_densities`` starts from a unit tangent
field and recovers the flexural densities together with the normals, using

    u1(s) = -d2(s) . t'(s),     d2(s) = d2(0) + int_0^s u1 t dr
    u2(s) =  d1(s) . t'(s),     d1(s) = d1(0) - int_0^s u2 t dr

which is the running-integral form of the Volterra equations of the second kind
satisfied by ``u1`` and ``u2`` (the kernel ``t(r) . t'(s)`` factorizes, so the
march is O(n)).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from .core import (
    FrameField,
    Grid,
    SampledCurve,
    UnitTangentField,
    VectorField,
    cumulative_integral,
    derivative,
)
from .errors import FramingError, NotOrthonormal

ORTHONORMAL_TOL = 1e-10


@dataclass(frozen=True)
class DensityField:
    """Flexural densities ``u1, u2`` and optional twist density ``u3``."""

    grid: Grid
    u1: np.ndarray
    u2: np.ndarray
    u3: np.ndarray | None = None

    def __post_init__(self):
        n = self.grid.n_samples
        for name in ("u1", "u2", "u3"):
            v = getattr(self, name)
            if v is None:
                continue
            v = np.asarray(v, dtype=float)
            if v.shape != (n,):
                raise FramingError(f"{name}: expected shape ({n},), got {v.shape}")
            object.__setattr__(self, name, v)

    @property
    def twist(self) -> np.ndarray:
        return np.zeros(self.grid.n_samples) if self.u3 is None else self.u3

    def angular_velocity(self) -> np.ndarray:
        """Body-frame angular velocity ``(u3, u1, u2)`` per node, shape (n, 3)."""
        return np.column_stack([self.twist, self.u1, self.u2])


def as_triad(frame0, tol: float = ORTHONORMAL_TOL, right_handed: bool = True) -> np.ndarray:
    """Validate an initial triad given as rows ``(t0, d1_0, d2_0)``."""
    F = np.asarray(frame0, dtype=float)
    if F.shape != (3, 3):
        raise NotOrthonormal(f"expected three 3-vectors, got shape {F.shape}")
    dev = np.max(np.abs(F @ F.T - np.eye(3)))
    if not dev <= tol:
        raise NotOrthonormal(f"initial triad deviates from orthonormal by {dev:.3g}")
    if right_handed and np.linalg.det(F) < 0:
        raise NotOrthonormal("initial triad is left-handed")
    return F


def default_normals(t0) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic normal pair for a unit tangent ``t0``.

    ``d1`` is the normalized component orthogonal to ``t0`` of the first
    standard basis vector with ``|e . t0| < 0.9``, and ``d2 = t0 x d1``.
    """
    t0 = np.asarray(t0, dtype=float)
    for e in np.eye(3):
        if abs(e @ t0) < 0.9:
            break
    d1 = e - (e @ t0) * t0
    d1 /= np.linalg.norm(d1)
    return d1, np.cross(t0, d1)


def rotate_normals(d1, d2, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Rotate a normal pair by ``alpha`` within its own plane (about ``d1 x d2``)."""
    c, s = np.cos(alpha), np.sin(alpha)
    d1, d2 = np.asarray(d1, dtype=float), np.asarray(d2, dtype=float)
    return c * d1 + s * d2, -s * d1 + c * d2


def _qmul_chain(q0, steps):
    # Sequential Hamilton products q_{k+1} = q_k * dq_k, scalar-last, renormalized
    # every step so the unit-quaternion constraint never drifts.
    out = [None] * (len(steps) + 1)
    x1, y1, z1, w1 = q0
    out[0] = (x1, y1, z1, w1)
    for k, (x2, y2, z2, w2) in enumerate(steps, start=1):
        x = w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2
        y = w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2
        z = w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2
        w = w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2
        r = (x * x + y * y + z * z + w * w) ** -0.5
        x1, y1, z1, w1 = x * r, y * r, z * r, w * r
        out[k] = (x1, y1, z1, w1)
    return np.array(out)


def propagate_frame(densities: DensityField, frame0) -> FrameField:
    """Integrate the framed-curve system from an initial triad.

    Each step multiplies the frame (columns ``t, d1, d2``) on the right by the
    exact rotation ``exp(h W)``, where ``W`` is the skew generator built from
    the average of the densities at the two step ends. Frames stay orthonormal
    to roundoff for any grid size, and constant densities are integrated
    exactly.

    Parameters
    ----------
    densities : DensityField
    frame0 : array_like, shape (3, 3)
        Rows ``t0, d1_0, d2_0``; orthonormal and right-handed.
    """
    F0 = as_triad(frame0)
    grid = densities.grid
    omega = densities.angular_velocity()
    mid = 0.5 * (omega[1:] + omega[:-1]) * grid.spacing
    dq = Rotation.from_rotvec(mid).as_quat()
    q0 = Rotation.from_matrix(F0.T).as_quat()
    R = Rotation.from_quat(_qmul_chain(q0.tolist(), dq.tolist())).as_matrix()
    return FrameField(grid, R[:, :, 0], R[:, :, 1], R[:, :, 2])


def reconstruct_curve(frame: FrameField, x0) -> SampledCurve:
    """Positions ``x(s) = x0 + int_0^s t dr`` by the trapezoidal rule."""
    x = cumulative_integral(VectorField(frame.grid, frame.t), x0)
    return SampledCurve(frame.grid, x.values)


def _march_rotation(t, D0):
    # Carry the normals from node k-1 to k with the minimal rotation taking
    # t_{k-1} to t_k. For d orthogonal to a this is
    #     d - (d . (b - a)) / (1 + a . b) * (a + b),   a = t_{k-1}, b = t_k,
    # a midpoint-type quadrature of the running integrals that is exactly
    # orthogonal, so {t, d1, d2} stays orthonormal to roundoff.
    a, b = t[:-1], t[1:]
    dt = b - a
    sv = a + b
    denom = 1.0 + np.sum(a * b, axis=1)
    if np.any(denom < 1e-12):
        k = int(np.argmin(denom))
        raise FramingError(f"tangent reverses direction between nodes {k} and {k + 1}")
    coef = sv / denom[:, None]
    out = np.empty((len(t), 2, 3))
    M = np.array(D0, dtype=float)
    out[0] = M
    for k in range(len(dt)):
        M = M - np.outer(M @ dt[k], coef[k])
        out[k + 1] = M
    return out


def _march_trapezoid(t, tp, h, D0):
    # Trapezoidal running integrals. The self-term at node k is linear in the
    # unknown density, so the implicit step is closed exactly:
    #     D_k = P - h/2 (D_k . t'_k) t_k  =>  D_k . t'_k = P . t'_k / (1 + h/2 t_k . t'_k)
    n = len(t)
    out = np.empty((n, 2, 3))
    M = np.array(D0, dtype=float)
    out[0] = M
    g = M @ tp[0]
    half = 0.5 * h
    for k in range(1, n):
        P = M - half * np.outer(g, t[k - 1])
        g = (P @ tp[k]) / (1.0 + half * (t[k] @ tp[k]))
        M = P - half * np.outer(g, t[k])
        out[k] = M
    return out


def solve_volterra_densities(
    t_field: UnitTangentField, d1_0, d2_0, scheme: str = "rotation"
) -> tuple[DensityField, FrameField]:
    """Flexural densities and the relatively parallel frame of a unit tangent field.

    Parameters
    ----------
    t_field : UnitTangentField
    d1_0, d2_0 : array_like, shape (3,)
        Initial normals; ``{t(0), d1_0, d2_0}`` must be orthonormal.
    scheme : {"rotation", "trapezoid"}
        Quadrature for the running integrals of the normals. ``"rotation"``
        advances each step by the exact minimal rotation between consecutive
        tangents and keeps the frame orthonormal to roundoff. ``"trapezoid"``
        is the plain trapezoidal rule, whose frame drifts from orthonormal at
        O(h^2).

    Returns
    -------
    densities : DensityField
        ``u1 = -d2 . t'`` and ``u2 = d1 . t'`` at every node, ``u3`` absent.
    frame : FrameField
        ``{t, d1, d2}``.
    """
    t = t_field.values
    as_triad([t[0], d1_0, d2_0], right_handed=False)
    h = t_field.grid.spacing
    tp = derivative(t, h)
    D0 = np.array([d1_0, d2_0], dtype=float)
    if scheme == "rotation":
        D = _march_rotation(t, D0)
    elif scheme == "trapezoid":
        D = _march_trapezoid(t, tp, h, D0)
    else:
        raise FramingError(f"unknown scheme {scheme!r}")
    d1, d2 = D[:, 0], D[:, 1]
    u1 = -np.sum(d2 * tp, axis=1)
    u2 = np.sum(d1 * tp, axis=1)
    grid = t_field.grid
    return DensityField(grid, u1, u2), FrameField(grid, t, d1, d2)


def normal_plane_angle(frame_a: FrameField, frame_b: FrameField) -> np.ndarray:
    """Signed angle from ``frame_a.d1`` to ``frame_b.d1`` about the shared tangent."""
    t = frame_a.t
    sin = np.sum(np.cross(frame_a.d1, frame_b.d1) * t, axis=1)
    cos = np.sum(frame_a.d1 * frame_b.d1, axis=1)
    return np.arctan2(sin, cos)
