"""Rotating the initial normals multiplies the complex density by a unit constant."""
import numpy as np

from framedcurves import curves
from framedcurves.core import unit_tangent
from framedcurves.invariants import complex_density, verify_rotation_invariance
from framedcurves.rpaf import default_normals, normal_plane_angle, rotate_normals, solve_volterra_densities

curve = curves.trefoil(n=4096)
t = unit_tangent(curve)
pair = default_normals(t.values[0])

for alpha in (np.pi / 6, np.pi / 3, 1.0, 3.0):
    rep = verify_rotation_invariance(t, pair, alpha)
    print(f"alpha={alpha:.6f}  shift={rep.phase_shift_mean:.9f}  "
          f"stdev={rep.phase_shift_stdev:.1e}  |u| gap={rep.max_abs_modulus_gap:.1e}")

# The same statement, read off the frames: the two normal pairs differ by a fixed angle.
alpha = 0.7
d_a, f_a = solve_volterra_densities(t, *pair)
d_b, f_b = solve_volterra_densities(t, *rotate_normals(*pair, alpha))
angle = normal_plane_angle(f_a, f_b)
print("normal-plane angle: mean", angle.mean(), "stdev", angle.std())

ratio = complex_density(d_b).values / complex_density(d_a).values
print("u_b / u_a at a few nodes:", np.round(ratio[::1024], 12))
print("exp(i alpha):            ", np.round(np.exp(1j * alpha), 12))
