"""Exact computations with reguli, normal rational curves, field reduction,
the Andre-Bruck-Bose representation and clubs over small finite fields."""

from .fields import FieldTower, make_field, make_field_tower, tower_for_q
from .nrc import is_nrc, moment_curve
from .projective import Subspace, meet, span
from .reduction import ReductionContext, Subgeometry
from .segre import SegreVariety, regulus, transversal_trace

__all__ = [
    "FieldTower", "make_field", "make_field_tower", "tower_for_q", "is_nrc", "moment_curve", "Subspace",
    "meet", "span", "ReductionContext", "Subgeometry", "SegreVariety", "regulus", "transversal_trace",
]
__version__ = "0.1.0"
