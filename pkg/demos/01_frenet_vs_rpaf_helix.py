"""Frenet frame and relatively parallel frame on one turn of a helix."""
import numpy as np

from framedcurves import curves
from framedcurves.core import interior
from framedcurves.frenet import frenet_frame
from framedcurves.invariants import compare_frenet_rpaf

a, b = 1.0, 1.0
kappa_exact, tau_exact = curves.helix_invariants(a, b)
print(f"helix a={a} b={b}: kappa = {kappa_exact}, |tau| = {tau_exact}")

curve = curves.helix(a, b, turns=1.0, n=4096)
fr = frenet_frame(curve)
inner = interior(curve.grid.n_samples)
print("Frenet kappa error  ", np.max(np.abs(fr.kappa[inner] - kappa_exact)))
print("Frenet |tau| error  ", np.max(np.abs(np.abs(fr.tau[inner]) - tau_exact)))
print("tau sign (b' = tau n)", np.sign(np.median(fr.tau)))  # right-handed -> negative

# The relatively parallel frame carries the same information as a modulus and a phase.
rep = compare_frenet_rpaf(curve)
for key, value in rep.summary().items():
    print(f"{key:24s}{value}")

# theta grows linearly, at the torsion rate
sel = rep.compared
slope = np.polyfit(curve.grid.nodes[sel], rep.theta[sel], 1)[0]
print("d theta / ds (fit)   ", slope)

# grid doubling halves h and should quarter the error
for n in (1024, 2048, 4096, 8192):
    r = compare_frenet_rpaf(curves.helix(a, b, n=n))
    print(f"n={n:5d}  tau gap {r.max_tau_gap:.3e}")
