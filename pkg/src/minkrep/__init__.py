"""Framed space-like surfaces, their Lorentz-invariant measures and a unitary
representation of inhomogeneous SL(2, C) on field-carrying surface states."""

from .fields import FieldSection, parse_field, to_text
from .geometry import ConvexRegion, Frame, RectSurface, SpanClass, classify_span
from .hilbert import StateVector, inner, inner_legacy, norm
from .lorentz import SL2C, InhomogeneousElement, boost, covering_map, rotation
from .representation import RepConfig, act

__version__ = "0.1.0"
