"""Pauli stabilizer codes over Z/p[x1^±, ..., xm^±].

The main entry points are re-exported here; see the submodules for the
full interfaces.
"""
from ._kernels import BACKEND
from .braiding import braiding_form
from .classify import classify_code
from .code import PauliCode, is_isotropic, is_lagrangian
from .errors import (ExponentOverflowError, FormatError, NotPoincareError, PreconditionError,
                     ResourceLimitError, RingMismatchError, StabClassError)
from .forms import QuadraticSpace, arf, l_group, witt_class
from .groebner import groebner, kernel, membership, normal_form, syzygies
from .homology import charge_module, charge_modules, coarse_grain, free_resolution, is_fully_mobile
from .qca import CliffordQCARep, verify_symplectic
from .ring import LaurentMatrix, LaurentPoly
from .surgery import PoincareComplex, classify, reduce_to_middle

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CliffordQCARep", "ExponentOverflowError", "FormatError", "LaurentMatrix",
    "LaurentPoly", "NotPoincareError", "PauliCode", "PoincareComplex", "PreconditionError",
    "QuadraticSpace", "ResourceLimitError", "RingMismatchError", "StabClassError", "arf",
    "braiding_form", "charge_module", "charge_modules", "classify", "classify_code",
    "coarse_grain", "free_resolution", "groebner", "is_fully_mobile", "is_isotropic",
    "is_lagrangian", "kernel", "l_group", "membership", "normal_form", "reduce_to_middle",
    "syzygies", "verify_symplectic", "witt_class",
]
