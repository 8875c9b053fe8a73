"""Exact calculus for affine group schemes over generalized dual numbers.

The package realizes, at desk scale, the correspondence between group
schemes over k[I] (I^2 = 0) and extensions 1 -> Lie(G, I) -> E -> G -> 1:
restriction of scalars in one direction, a cocycle-level Weil extension in
the other, with the group algebra scheme as the computational backbone, and
a windowed Dieudonne classification for unipotent groups over F_p[I].
"""

from .fields import GF, QQ, Field
from .poly import DualPoly, IModule, Poly, PresentedAlgebra
from .hopf import HopfPresentation, verify_hopf, lie_algebra
from .extensions import (
    Cochain1,
    Cocycle2,
    Deformation,
    ExtensionObj,
    baer_sum,
    build_extension,
    check_cocycle,
    coboundary,
    deform,
    extract_cocycle,
    scalar_mul,
    weil_extend,
)
from .weil import beta_apply, diamond, extension_of, kernel_L, weil_restrict
from .witt import WittVector
from .dieudonne import classify, d_normal_form, dieudonne_of_unipotent

__all__ = [
    "GF", "QQ", "Field", "DualPoly", "IModule", "Poly", "PresentedAlgebra",
    "HopfPresentation", "verify_hopf", "lie_algebra",
    "Cochain1", "Cocycle2", "Deformation", "ExtensionObj",
    "baer_sum", "build_extension", "check_cocycle", "coboundary", "deform",
    "extract_cocycle", "scalar_mul", "weil_extend",
    "beta_apply", "diamond", "extension_of", "kernel_L", "weil_restrict",
    "WittVector", "classify", "d_normal_form", "dieudonne_of_unipotent",
]
