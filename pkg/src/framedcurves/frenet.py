"""Serret-Frenet frame, curvature and torsion of sampled arc-length curves.

Two sign conventions for the torsion are supported:

``"plus"`` (default)
    ``n' = -kappa t - tau b`` and ``b' = tau n``, so ``tau = b' . n``.
``"minus"``
    ``n' = -kappa t + tau b`` and ``b' = -tau n``, so ``tau = n' . b``.

A right-handed helix has negative torsion under ``"plus"``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import (
    FrameField,
    Grid,
    SampledCurve,
    SPEED_TOL,
    default_eps_kappa,
    derivative,
    differentiate_runs,
    unit_tangent,
)
from .errors import FramingError, IrregularNodes, NoRegularNodes

CONVENTIONS = ("plus", "minus")


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise FramingError(f"unknown torsion convention {convention!r}; use one of {CONVENTIONS}")


@dataclass(frozen=True)
class FrenetField:
    """Frenet triad plus curvature and torsion.

    ``n``, ``b`` and ``tau`` are NaN wherever ``regular_mask`` is False.
    """

    grid: Grid
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    regular_mask: np.ndarray
    convention: str = "plus"

    def frame(self) -> FrameField:
        """The triad ``{t, n, b}`` as a FrameField; requires every node regular."""
        if not self.regular_mask.any():
            raise NoRegularNodes("curvature vanishes at every node")
        if not self.regular_mask.all():
            bad = int(np.count_nonzero(~self.regular_mask))
            raise IrregularNodes(f"Frenet frame undefined at {bad} of {self.grid.n_samples} nodes")
        return FrameField(self.grid, self.t, self.n, self.b)


def frenet_frame(
    curve: SampledCurve,
    eps_kappa: float | None = None,
    convention: str = "plus",
    speed_tol: float = SPEED_TOL,
) -> FrenetField:
    """Frenet frame of an arc-length sampled curve.

    ``kappa = |t'|`` at every node. Where ``kappa >= eps_kappa`` the normal is
    the component of ``t'`` orthogonal to ``t``, normalized, and ``b = t x n``.
    Elsewhere the node is flagged irregular. Torsion is then differentiated
    inside each maximal regular run only.
    """
    _check_convention(convention)
    grid = curve.grid
    if eps_kappa is None:
        eps_kappa = default_eps_kappa(grid)
    t = unit_tangent(curve, speed_tol).values
    tp = derivative(t, grid.spacing)
    kappa = np.linalg.norm(tp, axis=1)
    regular = kappa >= eps_kappa

    n = np.full_like(t, np.nan)
    b = np.full_like(t, np.nan)
    if regular.any():
        # t . t' is O(h^2) rather than zero on a grid; project it out so the
        # triad is orthonormal to roundoff.
        perp = tp[regular] - np.sum(tp[regular] * t[regular], axis=1)[:, None] * t[regular]
        n[regular] = perp / np.linalg.norm(perp, axis=1)[:, None]
        b[regular] = np.cross(t[regular], n[regular])

    field = FrenetField(grid, t, n, b, kappa, np.full(grid.n_samples, np.nan), regular, convention)
    return replace(field, tau=frenet_torsion(field))


def frenet_torsion(frenet: FrenetField, convention: str | None = None) -> np.ndarray:
    """Torsion ``b' . n`` (``"plus"``) or its negative (``"minus"``), NaN off the regular runs."""
    convention = frenet.convention if convention is None else convention
    _check_convention(convention)
    db = differentiate_runs(frenet.b, frenet.regular_mask, frenet.grid.spacing)
    tau = np.sum(db * frenet.n, axis=1)
    return tau if convention == "plus" else -tau


def weak_invariants(frame: FrameField) -> tuple[np.ndarray, np.ndarray]:
    """Curvature ``t' . d1`` and torsion ``d1' . d2`` of an arbitrary moving frame.

    With the Frenet triad this recovers ``kappa`` and the ``"minus"`` torsion.
    No masking is applied.
    """
    h = frame.grid.spacing
    kappa_w = np.sum(derivative(frame.t, h) * frame.d1, axis=1)
    tau_w = np.sum(derivative(frame.d1, h) * frame.d2, axis=1)
    return kappa_w, tau_w
