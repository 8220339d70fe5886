"""Kan filling on 01-substitution sets: free fibrations ``K f``, their
comonad and monad, algebras and uniform fillers, the generating boxes, and
path objects."""

from .boxes import DOWN, UP, FibrationStructure, FillingOperator, OpenBox, check_uniformity, make_open_box
from .kterms import Base, Comp, Fill, KObject, KTerm, SchemaError, free, pi, sigma
from .names import Name, Perm
from .reports import Report
from .zsub import ZMorphism, ZObject

__version__ = "0.1.0"

__all__ = [
    "Base", "Comp", "DOWN", "FibrationStructure", "Fill", "FillingOperator", "KObject", "KTerm", "Name",
    "OpenBox", "Perm", "Report", "SchemaError", "UP", "ZMorphism", "ZObject", "check_uniformity", "free",
    "make_open_box", "pi", "sigma",
]
