"""Strictly increasing continuous singular functions with prescribed
points of nonzero finite derivative, evaluated with exact enclosures."""

from .construction import SingularFunction, claimed_derivative, level_of
from .foundation import Enclosure, parse_rational, render_rational
from .nullsets import AffineCantor, ClosedNullSet, Grid, LevelChain, Point
from .specfile import PRESETS, load_spec

__all__ = [
    "AffineCantor", "ClosedNullSet", "Enclosure", "Grid", "LevelChain", "PRESETS",
    "Point", "SingularFunction", "claimed_derivative", "level_of", "load_spec",
    "parse_rational", "render_rational",
]
