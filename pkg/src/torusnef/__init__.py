"""Exact positivity tests for torus-equivariant vector bundles.

Two families of varieties are covered: Bott-Samelson-Demazure-Hansen
varieties of reduced words (``bsdh``) and wonderful compactifications of
minimal-rank symmetric spaces (``wonderful``).  On both, a bundle is nef
(ample) iff every restriction to an invariant curve has nonnegative
(positive) degrees, and the Seshadri constant at a fixed point is the least
such degree over the curves through it.
"""

from .bsdh import BsdhVariety, GalleryPoint, ModelCurve, YCurveData, build_bsdh
from .bundles import (
    EXACT_TAG, MODEL_CURVE_TAG, DirectSum, Dual, Line, Sym, Table, Tensor, Verdict, from_json,
    restrict, to_json,
)
from .errors import ConsistencyError, GuardError, NotNefError, SchemaError, TorusNefError
from .kernels import BACKEND
from .rootsys import Coroot, Root, RootSystem, Weight, build_root_system
from .weyl import WeylElement

__version__ = "0.1.0"

__all__ = [
    "BsdhVariety", "GalleryPoint", "ModelCurve", "YCurveData", "build_bsdh",
    "EXACT_TAG", "MODEL_CURVE_TAG", "DirectSum", "Dual", "Line", "Sym", "Table", "Tensor",
    "Verdict", "from_json", "restrict", "to_json",
    "ConsistencyError", "GuardError", "NotNefError", "SchemaError", "TorusNefError",
    "BACKEND", "Coroot", "Root", "RootSystem", "Weight", "build_root_system", "WeylElement",
]
