"""Exact combinatorial models of 3-fold (-2,0)-flops.

The package builds the affine manifold trop U with its singular line,
the cone sigma and its subdivisions, the dual manifold trop V with the
pairing, and the theta functions of the mirror singularity.
"""
from .tropu import FlopConfig, SheetedVector, monodromy, segments_between
from .cones import (ConeComplex, Ray, SheetedCone, admissible_sides, flop_subdivision,
                    is_convex, local_fan, pagoda, sigma, wall_relation)
from .dual import DualCone, DualPoint, dual_cone, dual_monodromy, hilbert_basis, pair
from .theta import LaurentPoly, mirror_ideal, theta, wall_cross
from .verify import Report, run_verify

__all__ = [
    "FlopConfig", "SheetedVector", "monodromy", "segments_between",
    "ConeComplex", "Ray", "SheetedCone", "admissible_sides", "flop_subdivision",
    "is_convex", "local_fan", "pagoda", "sigma", "wall_relation",
    "DualCone", "DualPoint", "dual_cone", "dual_monodromy", "hilbert_basis", "pair",
    "LaurentPoly", "mirror_ideal", "theta", "wall_cross",
    "Report", "run_verify",
]
