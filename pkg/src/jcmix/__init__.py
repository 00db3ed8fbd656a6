"""Jaynes-Cummings dynamics of a two-level atom driven by pure and mixed
squeezed coherent fields."""

from .fock import SqueezeParam
from .states import FieldParams, Kind, mixing_weight

__all__ = ["FieldParams", "Kind", "SqueezeParam", "mixing_weight"]
