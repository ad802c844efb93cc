"""Exact engine for equivariant exceptional collections on symmetric powers of real Brauer-Severi varieties."""

from .algebra import (
    QAlgebra,
    RealSimpleFactor,
    WedderburnReport,
    center,
    central_primitive_idempotents,
    classify_real,
    classify_real_oracle,
    fixed_subalgebra,
    radical,
    tensor,
    verify_automorphism,
)
from .brauer import HAMILTON, SPLIT, BrauerClass, CsaDescriptor, Motive, motive_cancel, motive_iso
from .collection import CollectionReport, base_collection, build_report, enumerate_cells
from .poly import RatPoly
from .linalg import RatMatrix

__all__ = [
    "HAMILTON",
    "SPLIT",
    "BrauerClass",
    "CollectionReport",
    "CsaDescriptor",
    "Motive",
    "QAlgebra",
    "RatMatrix",
    "RatPoly",
    "RealSimpleFactor",
    "WedderburnReport",
    "base_collection",
    "build_report",
    "center",
    "central_primitive_idempotents",
    "classify_real",
    "classify_real_oracle",
    "enumerate_cells",
    "fixed_subalgebra",
    "motive_cancel",
    "motive_iso",
    "radical",
    "tensor",
    "verify_automorphism",
]
