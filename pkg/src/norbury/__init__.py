"""Numerical verification of McShane-Norbury identities for nonorientable
cusped hyperbolic surfaces and their quasifuchsian deformations."""

from .mobius import ComplexLength, MatrixRep, apply, compose, complex_length, fixed_points
from .repbuild import Representation, bend, build_bordered_n12, build_family, normalize_cusp, validate
from .surface import SurfacePresentation, canonical_conjugacy, presentation

__all__ = [
    "ComplexLength",
    "MatrixRep",
    "Representation",
    "SurfacePresentation",
    "apply",
    "bend",
    "build_bordered_n12",
    "build_family",
    "canonical_conjugacy",
    "complex_length",
    "compose",
    "fixed_points",
    "normalize_cusp",
    "presentation",
    "validate",
]

__version__ = "0.1.0"
