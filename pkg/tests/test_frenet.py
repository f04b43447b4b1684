import numpy as np
import pytest

from framedcurves import curves
from framedcurves.core import FrameField, Grid, SampledCurve, derivative, interior, unit_tangent
from framedcurves.errors import FramingError, IrregularNodes, NotUnitSpeed, NoRegularNodes
from framedcurves.frenet import frenet_frame, frenet_torsion, weak_invariants
from framedcurves.rpaf import default_normals, rotate_normals, solve_volterra_densities


def test_straight_line_is_fully_masked():
    fr = frenet_frame(curves.line(length=2.0, n=101))
    assert np.all(fr.kappa == 0.0)
    assert not fr.regular_mask.any()
    assert np.all(np.isnan(fr.n)) and np.all(np.isnan(fr.tau))
    with pytest.raises(NoRegularNodes):
        fr.frame()


def test_circle_radius_two():
    fr = frenet_frame(curves.circle(radius=2.0, n=4096))
    inner = interior(4096)
    assert np.max(np.abs(fr.kappa - 0.5)[inner]) < 1e-5
    assert fr.regular_mask.all()
    assert np.max(np.abs(fr.tau)) < 1e-6


def test_helix_curvature_and_torsion(helix4096):
    # a = b = 1, c = sqrt(2): kappa = a/c^2, and for the right-handed helix
    # b' = (b/c^2)(cos, sin, 0) while n = -(cos, sin, 0), so b'.n = -b/c^2.
    fr = frenet_frame(helix4096)
    inner = interior(4096)
    assert np.max(np.abs(fr.kappa - 0.5)[inner]) < 1e-3
    assert np.max(np.abs(fr.tau + 0.5)[inner]) < 1e-3


def test_convention_flip_negates_torsion_exactly(helix4096):
    plus = frenet_frame(helix4096, convention="plus")
    minus = frenet_frame(helix4096, convention="minus")
    np.testing.assert_array_equal(minus.tau, -plus.tau)
    np.testing.assert_array_equal(frenet_torsion(plus, "minus"), minus.tau)
    with pytest.raises(FramingError):
        frenet_frame(helix4096, convention="sec3")


def test_frenet_triad_orthonormal(helix4096):
    fr = frenet_frame(helix4096)
    frame = fr.frame()
    assert frame.gram_deviation().max() < 1e-8
    assert np.max(np.abs(np.cross(fr.t, fr.n) - fr.b)) < 1e-8


def test_tangent_derivative_norm_is_curvature(helix4096):
    fr = frenet_frame(helix4096)
    t = unit_tangent(helix4096).values
    tp = derivative(t, helix4096.grid.spacing)
    np.testing.assert_allclose(np.sum(tp * tp, axis=1), fr.kappa**2, rtol=1e-8)


def test_reversal_keeps_curvature(helix4096):
    fwd = frenet_frame(helix4096)
    rev = frenet_frame(helix4096.reversed())
    inner = interior(4096)
    np.testing.assert_allclose(rev.kappa[::-1][inner], fwd.kappa[inner], atol=1e-12)


def test_grid_doubling_convergence():
    errs = []
    for n in (1024, 2048):
        fr = frenet_frame(curves.helix(n=n))
        inner = interior(n)
        errs.append((np.max(np.abs(fr.kappa - 0.5)[inner]), np.max(np.abs(np.abs(fr.tau) - 0.5)[inner])))
    for coarse, fine in zip(*errs):
        assert 3.0 < coarse / fine < 5.0


def test_unit_speed_is_enforced():
    g = Grid(1.0, 50)
    s = g.nodes
    curve = SampledCurve(g, np.column_stack([1.5 * s, 0 * s, 0 * s]))
    with pytest.raises(NotUnitSpeed):
        frenet_frame(curve)


def test_partially_flat_curve_masks_only_the_flat_piece():
    # quarter circle followed by a tangent straight segment
    h = 1e-3
    s1 = np.arange(0, np.pi / 2, h)
    arc = np.column_stack([np.cos(s1), np.sin(s1), 0 * s1])
    s2 = np.arange(h, 1.0, h)
    seg = np.column_stack([-s2, 1 + 0 * s2, 0 * s2])
    pts = np.vstack([arc, seg])
    from framedcurves.core import resample_arclength

    curve = resample_arclength(pts, 2000)
    fr = frenet_frame(curve, eps_kappa=1e-3)
    assert fr.regular_mask[:500].all()
    assert not fr.regular_mask[-200:].any()
    assert np.all(np.isnan(fr.tau[~fr.regular_mask]))
    with pytest.raises(IrregularNodes):
        fr.frame()


def test_weak_invariants_on_helix_frenet_frame(helix4096):
    kw, tw = weak_invariants(frenet_frame(helix4096).frame())
    inner = interior(4096)
    assert np.max(np.abs(kw - 0.5)[inner]) < 1e-3
    # n'.b follows the b' = -tau n sign
    assert np.max(np.abs(tw - 0.5)[inner]) < 1e-3


def test_weak_invariants_on_line_rpaf():
    curve = curves.line(length=3.0, n=64)
    t = unit_tangent(curve)
    _, frame = solve_volterra_densities(t, *default_normals(t.values[0]))
    kw, tw = weak_invariants(frame)
    assert np.all(kw == 0.0) and np.all(tw == 0.0)


@pytest.mark.parametrize("angle", [0.3, 1.7, -2.5])
def test_rotated_frame_decomposition_of_tangent_derivative(helix4096, angle):
    t = unit_tangent(helix4096)
    _, frame = solve_volterra_densities(t, *default_normals(t.values[0]))
    c, s = np.cos(angle), np.sin(angle)
    rot = FrameField(frame.grid, frame.t, c * frame.d1 + s * frame.d2, -s * frame.d1 + c * frame.d2)
    tp = derivative(frame.t, frame.grid.spacing)

    def split(fr):
        kw, _ = weak_invariants(fr)
        return kw**2 + np.sum(tp * fr.d2, axis=1) ** 2

    k0, _ = weak_invariants(frame)
    k1, _ = weak_invariants(rot)
    assert np.max(np.abs(k0 - k1)) > 1e-2
    np.testing.assert_allclose(split(rot), split(frame), atol=1e-10)
