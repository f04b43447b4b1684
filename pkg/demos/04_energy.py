"""Energies of the form integral f(kappa, tau) ds."""
import numpy as np

from framedcurves import curves
from framedcurves.expr import parse_polynomial
from framedcurves.frenet import frenet_frame
from framedcurves.invariants import framed_energy

bending = parse_polynomial("kappa^2")
rod = parse_polynomial("kappa^2 + tau^2")

# unit circle: kappa = 1, so the bending energy is the length 2 pi
for n in (1024, 4096, 16384):
    frame = frenet_frame(curves.circle(1.0, n)).frame()
    e = framed_energy(frame, bending)
    print(f"circle n={n:5d}  E = {e:.10f}  error {abs(e - 2 * np.pi):.2e}")

# helix a=b=1: kappa = |tau| = 1/2 over length 2 pi sqrt 2
frame = frenet_frame(curves.helix(n=4096)).frame()
print("helix rod energy", framed_energy(frame, rod), "expected", np.pi * np.sqrt(2))

# bending energy of a trefoil, for scale
frame = frenet_frame(curves.trefoil(n=8192)).frame()
print("trefoil bending energy", framed_energy(frame, bending))
