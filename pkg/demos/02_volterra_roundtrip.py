"""Densities -> frame -> curve -> densities again."""
import numpy as np

from framedcurves.core import Grid, UnitTangentField, unit_tangent
from framedcurves.rpaf import (
    DensityField,
    propagate_frame,
    reconstruct_curve,
    solve_volterra_densities,
)

# constant densities give a helix
L, n = 10.0, 4096
grid = Grid(L, n)
u1, u2 = 0.3, 0.8
frame = propagate_frame(DensityField(grid, np.full(n, u1), np.full(n, u2)), np.eye(3))
print("Gram deviation after propagation:", frame.gram_deviation().max())

curve = reconstruct_curve(frame, x0=[0.0, 0.0, 0.0])
print("end point:", curve.points[-1])

# recover the densities from the tangent alone
t = UnitTangentField(grid, frame.t / np.linalg.norm(frame.t, axis=1)[:, None])
dens, frame_back = solve_volterra_densities(t, frame.d1[0], frame.d2[0])
print("max |u1 - 0.3|:", np.max(np.abs(dens.u1 - u1)))
print("max |u2 - 0.8|:", np.max(np.abs(dens.u2 - u2)))

# same thing starting from the sampled points instead of the tangent
# (the finite-difference tangent at s=0 is off by O(h^2), so re-orthogonalize d1)
t_fd = unit_tangent(curve)
t0 = t_fd.values[0]
d1 = frame.d1[0] - (frame.d1[0] @ t0) * t0
d1 /= np.linalg.norm(d1)
dens_fd, _ = solve_volterra_densities(t_fd, d1, np.cross(t0, d1))
print("from points, max density error:", max(np.abs(dens_fd.u1 - u1).max(), np.abs(dens_fd.u2 - u2).max()))

# the alternative marching scheme drifts off orthonormality slowly
_, ftrap = solve_volterra_densities(t, frame.d1[0], frame.d2[0], scheme="trapezoid")
print("Gram deviation, rotation scheme: ", frame_back.gram_deviation().max())
print("Gram deviation, trapezoid scheme:", ftrap.gram_deviation().max())
