"""Curvature and torsion from relatively parallel frame densities.

The flexural densities of a relatively parallel frame are packed into the
complex density ``u = u2 + i u1``. Its modulus is the curvature. Its argument
``theta`` (principal value in ``[-pi, pi)``, unwrapped along the curve) has
derivative equal to the torsion up to sign. Changing the initial normals by a
fixed rotation multiplies ``u`` by a unit constant, so the modulus is
unchanged and ``theta`` shifts by the rotation angle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .core import (
    BOUNDARY_MARGIN,
    SPEED_TOL,
    FrameField,
    Grid,
    SampledCurve,
    UnitTangentField,
    default_eps_kappa,
    differentiate_runs,
    interior,
    maximal_runs,
    unit_tangent,
)
from .errors import NonzeroTwist, NoRegularNodes
from .frenet import frenet_frame, weak_invariants
from .rpaf import DensityField, default_normals, rotate_normals, solve_volterra_densities

TWIST_TOL = 1e-12


@dataclass(frozen=True)
class ComplexDensityField:
    grid: Grid
    re: np.ndarray
    im: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.re + 1j * self.im

    @property
    def modulus(self) -> np.ndarray:
        return np.hypot(self.re, self.im)


@dataclass(frozen=True)
class InvariantField:
    """Curvature, unwrapped phase and torsion; theta and tau are NaN off ``valid_mask``."""

    grid: Grid
    kappa: np.ndarray
    theta: np.ndarray
    tau: np.ndarray
    valid_mask: np.ndarray


@dataclass(frozen=True)
class InvarianceReport:
    max_abs_modulus_gap: float
    phase_shift_mean: float
    phase_shift_stdev: float
    nodes_compared: int

    def as_dict(self) -> dict:
        return {
            "max_abs_modulus_gap": self.max_abs_modulus_gap,
            "phase_shift_mean": self.phase_shift_mean,
            "phase_shift_stdev": self.phase_shift_stdev,
            "nodes_compared": self.nodes_compared,
        }


def complex_density(d: DensityField) -> ComplexDensityField:
    """``u = u2 + i u1``; only defined for relatively parallel frames."""
    if d.u3 is not None and np.any(np.abs(d.u3) > TWIST_TOL):
        raise NonzeroTwist(f"twist density reaches {np.max(np.abs(d.u3)):.3g}")
    return ComplexDensityField(d.grid, d.u2, d.u1)


def principal_argument(re, im) -> np.ndarray:
    """Argument of ``re + i im`` in ``[-pi, pi)``."""
    arg = np.arctan2(im, re)
    return np.where(arg >= np.pi, -np.pi, arg)


def unwrap_runs(raw, mask) -> np.ndarray:
    """Unwrap phases independently inside each maximal True run of ``mask``."""
    out = np.full(np.shape(raw), np.nan)
    for a, b in maximal_runs(mask):
        out[a:b] = np.unwrap(raw[a:b])
    return out


def extract_invariants(u: ComplexDensityField, eps_kappa: float | None = None) -> InvariantField:
    if eps_kappa is None:
        eps_kappa = default_eps_kappa(u.grid)
    kappa = u.modulus
    valid = kappa >= eps_kappa
    theta = unwrap_runs(principal_argument(u.re, u.im), valid)
    tau = differentiate_runs(theta, valid, u.grid.spacing)
    return InvariantField(u.grid, kappa, theta, tau, valid)


def phase_shift_stats(theta_a, theta_b, mask) -> tuple[float, float, int]:
    """Mean (folded into ``[-pi, pi)``) and stdev of ``theta_b - theta_a`` over ``mask``.

    Separate runs may be unwrapped onto different 2*pi branches, so every
    difference is first moved to the branch nearest the first one.
    """
    diff = (np.asarray(theta_b) - np.asarray(theta_a))[mask]
    if diff.size == 0:
        return float("nan"), float("nan"), 0
    diff = diff - 2 * np.pi * np.round((diff - diff[0]) / (2 * np.pi))
    mean = (diff.mean() + np.pi) % (2 * np.pi) - np.pi
    return float(mean), float(diff.std()), int(diff.size)


def verify_rotation_invariance(
    t_field: UnitTangentField,
    pair0,
    alpha: float,
    eps_kappa: float | None = None,
    scheme: str = "rotation",
) -> InvarianceReport:
    """Compare the complex densities of two frames whose initial normals differ by ``alpha``.

    The second normal pair is ``pair0`` rotated by ``alpha`` about ``t(0)``.
    The reported phase shift is ``theta_rotated - theta``, which should be
    ``alpha`` at every jointly valid node.
    """
    d1_0, d2_0 = (np.asarray(v, dtype=float) for v in pair0)
    e1_0, e2_0 = rotate_normals(d1_0, d2_0, alpha)
    dens, _ = solve_volterra_densities(t_field, d1_0, d2_0, scheme)
    dens_r, _ = solve_volterra_densities(t_field, e1_0, e2_0, scheme)
    inv = extract_invariants(complex_density(dens), eps_kappa)
    inv_r = extract_invariants(complex_density(dens_r), eps_kappa)
    joint = inv.valid_mask & inv_r.valid_mask
    mean, std, count = phase_shift_stats(inv.theta, inv_r.theta, joint)
    gap = float(np.max(np.abs(inv.kappa - inv_r.kappa)[joint])) if count else 0.0
    return InvarianceReport(gap, mean, std, count)


@dataclass(frozen=True)
class FrenetRpafReport:
    """Nodewise comparison of Frenet and relatively parallel frame invariants.

    ``compared`` marks the interior nodes that are regular for both pipelines;
    the ``max_*`` summaries are taken over them. ``tau_sign`` is the sign
    relating ``theta'`` to the Frenet torsion, as observed.
    """

    grid: Grid
    kappa_frenet: np.ndarray
    tau_frenet: np.ndarray
    kappa_rpaf: np.ndarray
    theta: np.ndarray
    theta_prime: np.ndarray
    normal_residual: np.ndarray
    binormal_residual: np.ndarray
    compared: np.ndarray
    max_kappa_gap: float
    max_tau_gap: float
    max_normal_residual: float
    max_binormal_residual: float
    tau_sign: int

    def summary(self) -> dict:
        return {
            "nodes_compared": int(np.count_nonzero(self.compared)),
            "max_kappa_gap": self.max_kappa_gap,
            "max_tau_gap": self.max_tau_gap,
            "max_normal_residual": self.max_normal_residual,
            "max_binormal_residual": self.max_binormal_residual,
            "tau_sign": self.tau_sign,
        }


def compare_frenet_rpaf(
    curve: SampledCurve,
    eps_kappa: float | None = None,
    convention: str = "plus",
    normals=None,
    margin: int = BOUNDARY_MARGIN,
    speed_tol: float = SPEED_TOL,
) -> FrenetRpafReport:
    """Check the curvature/torsion dictionary between Frenet and RPAF pictures.

    Besides the invariants themselves, the Frenet normal and binormal are
    rebuilt from the RPAF normals as ``n = cos(theta) d1 - sin(theta) d2``
    and ``b = sin(theta) d1 + cos(theta) d2`` and compared nodewise.
    """
    if eps_kappa is None:
        eps_kappa = default_eps_kappa(curve.grid)
    fr = frenet_frame(curve, eps_kappa, convention, speed_tol)
    if not fr.regular_mask.any():
        raise NoRegularNodes("curvature is below threshold at every node")
    t_field = unit_tangent(curve, speed_tol)
    d1_0, d2_0 = default_normals(t_field.values[0]) if normals is None else normals
    dens, frame = solve_volterra_densities(t_field, d1_0, d2_0)
    inv = extract_invariants(complex_density(dens), eps_kappa)

    c, s = np.cos(inv.theta)[:, None], np.sin(inv.theta)[:, None]
    n_rec = c * frame.d1 - s * frame.d2
    b_rec = s * frame.d1 + c * frame.d2
    n_res = np.linalg.norm(n_rec - fr.n, axis=1)
    b_res = np.linalg.norm(b_rec - fr.b, axis=1)

    n = curve.grid.n_samples
    compared = np.zeros(n, dtype=bool)
    compared[interior(n, margin)] = True
    compared &= fr.regular_mask & inv.valid_mask & np.isfinite(fr.tau) & np.isfinite(inv.tau)
    if not compared.any():
        raise NoRegularNodes("no interior node is regular in both pipelines")

    sel = compared
    tau_gap = np.abs(np.abs(inv.tau[sel]) - np.abs(fr.tau[sel]))
    product = float(np.sum(inv.tau[sel] * fr.tau[sel]))
    return FrenetRpafReport(
        grid=curve.grid,
        kappa_frenet=fr.kappa,
        tau_frenet=fr.tau,
        kappa_rpaf=inv.kappa,
        theta=inv.theta,
        theta_prime=inv.tau,
        normal_residual=n_res,
        binormal_residual=b_res,
        compared=compared,
        max_kappa_gap=float(np.max(np.abs(fr.kappa - inv.kappa)[sel])),
        max_tau_gap=float(np.max(tau_gap)),
        max_normal_residual=float(np.max(n_res[sel])),
        max_binormal_residual=float(np.max(b_res[sel])),
        tau_sign=1 if product >= 0 else -1,
    )


def framed_energy(frame: FrameField, f) -> float:
    """Trapezoidal ``int_0^L f(t'.n, n'.b) ds`` with the weak invariants of ``frame``.

    ``f`` is called once with the two nodewise arrays and must broadcast.
    """
    kappa_w, tau_w = weak_invariants(frame)
    values = np.broadcast_to(np.asarray(f(kappa_w, tau_w), dtype=float), kappa_w.shape)
    return float(trapezoid(values, dx=frame.grid.spacing))
