"""Serret-Frenet and relatively parallel (Bishop) framing of sampled space curves."""
from .core import (
    FrameField,
    Grid,
    SampledCurve,
    UnitTangentField,
    VectorField,
    cumulative_integral,
    differentiate,
    resample_arclength,
    unit_tangent,
)
from .errors import (
    FramingError,
    IrregularNodes,
    NonzeroTwist,
    NoRegularNodes,
    NotOrthonormal,
    NotUnitSpeed,
    TooFewPoints,
    ZeroLengthSegment,
)
from .frenet import FrenetField, frenet_frame, frenet_torsion, weak_invariants
from .invariants import (
    ComplexDensityField,
    InvarianceReport,
    InvariantField,
    compare_frenet_rpaf,
    complex_density,
    extract_invariants,
    framed_energy,
    verify_rotation_invariance,
)
from .rpaf import (
    DensityField,
    default_normals,
    propagate_frame,
    reconstruct_curve,
    rotate_normals,
    solve_volterra_densities,
)

__version__ = "0.1.0"
