"""Deciding SU(2)-abelian fundamental groups of geometric 3-manifolds."""

from .errors import (
    ParseError,
    PreconditionError,
    SU2Error,
)
from .presentation import GroupPresentation, abelianization, parse_presentation
from .quaternion import Representation, UnitQuaternion

__all__ = [
    "GroupPresentation",
    "ParseError",
    "PreconditionError",
    "Representation",
    "SU2Error",
    "UnitQuaternion",
    "abelianization",
    "parse_presentation",
]
