import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from framedcurves import curves
from framedcurves.core import Grid, interior, unit_tangent
from framedcurves.errors import NonzeroTwist, NoRegularNodes
from framedcurves.frenet import frenet_frame
from framedcurves.invariants import (
    ComplexDensityField,
    compare_frenet_rpaf,
    complex_density,
    extract_invariants,
    framed_energy,
    phase_shift_stats,
    principal_argument,
    unwrap_runs,
    verify_rotation_invariance,
)
from framedcurves.rpaf import DensityField, default_normals, solve_volterra_densities

from conftest import analytic_circle_tangent, analytic_helix_tangent


def test_complex_density_arithmetic():
    g = Grid(1.0, 3)
    u = complex_density(DensityField(g, np.array([3.0, 0.0, 0.0]), np.array([4.0, 0.0, 1.0])))
    assert u.modulus[0] == 5.0
    assert abs(np.angle(u.values[0]) - 0.6435011) < 1e-7
    inv = extract_invariants(u, eps_kappa=1e-6)
    assert not inv.valid_mask[1] and inv.valid_mask[0] and inv.valid_mask[2]


def test_circle_densities_have_zero_phase():
    dens, _ = solve_volterra_densities(analytic_circle_tangent(1024), [0, 1, 0], [0, 0, 1])
    inv = extract_invariants(complex_density(dens))
    assert np.max(np.abs(inv.theta)) < 1e-6
    np.testing.assert_allclose(inv.kappa, 1.0, atol=1e-5)


def test_twisted_densities_are_rejected():
    g = Grid(1.0, 4)
    with pytest.raises(NonzeroTwist):
        complex_density(DensityField(g, np.ones(4), np.ones(4), np.full(4, 1e-6)))
    complex_density(DensityField(g, np.ones(4), np.ones(4), np.zeros(4)))


def test_principal_argument_range():
    arg = principal_argument(np.array([-1.0, -1.0, 1.0, 0.0]), np.array([0.0, -0.0, 0.0, 1.0]))
    np.testing.assert_allclose(arg, [-np.pi, -np.pi, 0.0, np.pi / 2])
    assert np.all(arg >= -np.pi) and np.all(arg < np.pi)


def test_unwrap_single_correction():
    out = unwrap_runs(np.array([0.1, 3.0, -3.0]), np.ones(3, bool))
    np.testing.assert_allclose(out, [0.1, 3.0, 3.2831853], atol=1e-7)


def test_unwrap_is_per_run():
    raw = np.array([3.0, -3.0, 0.0, -3.0, 3.0])
    mask = np.array([1, 1, 0, 1, 1], dtype=bool)
    out = unwrap_runs(raw, mask)
    np.testing.assert_allclose(out[[0, 1]], [3.0, 2 * np.pi - 3.0])
    np.testing.assert_allclose(out[[3, 4]], [-3.0, 3.0 - 2 * np.pi])
    assert np.isnan(out[2])


def test_helix_complex_density():
    n = 4096
    g = Grid(2 * np.pi * np.sqrt(2), n)
    s = g.nodes
    u = ComplexDensityField(g, 0.5 * np.cos(0.5 * s), 0.5 * np.sin(0.5 * s))
    inv = extract_invariants(u)
    inner = interior(n)
    np.testing.assert_allclose(inv.kappa, 0.5, atol=1e-14)
    assert np.max(np.abs(inv.tau[inner] - 0.5)) < 1e-3
    assert np.all(np.abs(np.diff(inv.theta)) <= np.pi)


def test_zero_density_is_fully_masked():
    g = Grid(1.0, 10)
    inv = extract_invariants(ComplexDensityField(g, np.zeros(10), np.zeros(10)))
    assert not inv.valid_mask.any()
    assert np.all(np.isnan(inv.theta)) and np.all(np.isnan(inv.tau))


def test_density_identities_hold_exactly(helix4096):
    t = unit_tangent(helix4096)
    dens, _ = solve_volterra_densities(t, *default_normals(t.values[0]))
    inv = extract_invariants(complex_density(dens))
    np.testing.assert_allclose(dens.u1, inv.kappa * np.sin(inv.theta), atol=1e-14)
    np.testing.assert_allclose(dens.u2, inv.kappa * np.cos(inv.theta), atol=1e-14)
    np.testing.assert_allclose(inv.kappa**2, dens.u1**2 + dens.u2**2, rtol=1e-12)


def test_rotation_invariance_alpha_zero():
    t = analytic_helix_tangent(1024)
    rep = verify_rotation_invariance(t, default_normals(t.values[0]), 0.0)
    assert rep.max_abs_modulus_gap < 1e-12
    assert abs(rep.phase_shift_mean) < 1e-12
    assert rep.nodes_compared == 1024


def test_rotation_invariance_helix():
    t = analytic_helix_tangent(4096)
    rep = verify_rotation_invariance(t, default_normals(t.values[0]), np.pi / 3)
    assert abs(rep.phase_shift_mean - np.pi / 3) < 1e-8
    assert rep.phase_shift_stdev < 1e-8
    assert rep.max_abs_modulus_gap < 1e-10


def test_rotation_invariance_circle_quarter_turn():
    t = analytic_circle_tangent(2048)
    pair = (np.array([0.0, 1, 0]), np.array([0.0, 0, 1]))
    rep = verify_rotation_invariance(t, pair, np.pi / 2)
    assert abs(rep.phase_shift_mean - np.pi / 2) < 1e-8
    # u = 1 becomes u e^{i pi/2} = i, i.e. (u1, u2) = (1, 0)
    from framedcurves.rpaf import rotate_normals

    dens, _ = solve_volterra_densities(t, *rotate_normals(*pair, np.pi / 2))
    assert np.max(np.abs(dens.u1 - 1)) < 1e-5 and np.max(np.abs(dens.u2)) < 1e-5
    np.testing.assert_allclose(np.hypot(dens.u1, dens.u2), 1.0, atol=1e-5)


def test_phase_shift_stats_handles_branches():
    a = np.array([0.0, 0.1, 0.2, 0.3])
    b = a + 3.0
    b[2:] -= 2 * np.pi
    mean, std, count = phase_shift_stats(a, b, np.ones(4, bool))
    assert abs(mean - 3.0) < 1e-12 and std < 1e-12 and count == 4
    mean, _, count = phase_shift_stats(a, a + np.pi, np.ones(4, bool))
    assert abs(mean + np.pi) < 1e-12
    assert np.isnan(phase_shift_stats(a, b, np.zeros(4, bool))[0])


def test_compare_helix(helix4096):
    rep = compare_frenet_rpaf(helix4096)
    assert rep.max_kappa_gap < 1e-4
    assert rep.max_tau_gap < 1e-3
    assert rep.max_normal_residual < 1e-4 and rep.max_binormal_residual < 1e-4
    assert rep.tau_sign == 1
    assert compare_frenet_rpaf(helix4096, convention="minus").tau_sign == -1


def test_compare_circle(circle4096):
    rep = compare_frenet_rpaf(circle4096)
    sel = rep.compared
    assert np.max(np.abs(rep.theta_prime[sel])) < 1e-6
    assert np.max(np.abs(rep.tau_frenet[sel])) < 1e-6
    assert rep.max_kappa_gap < 1e-5


def test_compare_line_raises():
    with pytest.raises(NoRegularNodes):
        compare_frenet_rpaf(curves.line(n=50))


def test_energy_unit_circle():
    fr = frenet_frame(curves.circle(radius=1.0, n=16384))
    assert abs(framed_energy(fr.frame(), lambda k, t: k**2) - 2 * np.pi) < 1e-6
    assert framed_energy(fr.frame(), lambda k, t: 0.0) == 0.0


def test_energy_helix_turn(helix4096):
    fr = frenet_frame(helix4096)
    L = 2 * np.pi * np.sqrt(2)
    assert abs(framed_energy(fr.frame(), lambda k, t: k**2 + t**2) - 0.5 * L) < 1e-4


@settings(max_examples=30, deadline=None)
@given(st.floats(-np.pi, np.pi), st.floats(0, 2 * np.pi))
def test_modulus_and_phase_invariance(alpha, base):
    from framedcurves.rpaf import rotate_normals

    t = analytic_helix_tangent(512, radius=1.3, pitch=0.4)
    pair = rotate_normals(*default_normals(t.values[0]), base)
    rep = verify_rotation_invariance(t, pair, alpha)
    assert rep.max_abs_modulus_gap < 1e-10
    assert rep.phase_shift_stdev < 1e-8
    gap = (rep.phase_shift_mean - alpha + np.pi) % (2 * np.pi) - np.pi
    assert abs(gap) < 1e-8


@settings(max_examples=50, deadline=None)
@given(st.floats(-10, 10))
def test_unwrap_shift_equivariance(shift):
    n = 400
    g = Grid(20.0, n)
    s = g.nodes
    raw = principal_argument(np.cos(0.8 * s + np.sin(s)), np.sin(0.8 * s + np.sin(s)))
    raw_shifted = principal_argument(np.cos(raw + shift), np.sin(raw + shift))
    mask = np.ones(n, bool)
    a, b = unwrap_runs(raw, mask), unwrap_runs(raw_shifted, mask)
    offset = b - a
    assert np.ptp(offset) < 1e-9
    k = (offset[0] - shift) / (2 * np.pi)
    assert abs(k - round(k)) < 1e-9
    ua = ComplexDensityField(g, np.cos(raw), np.sin(raw))
    ub = ComplexDensityField(g, np.cos(raw_shifted), np.sin(raw_shifted))
    np.testing.assert_allclose(extract_invariants(ub).tau, extract_invariants(ua).tau, atol=1e-9)
