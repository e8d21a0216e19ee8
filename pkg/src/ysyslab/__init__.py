"""Exact and numeric verification of Y-systems attached to pairs of simply laced Dynkin diagrams."""

__version__ = "0.1.0"

from .cluster.seed import make_pair
from .dynkin import build_diagram, parse_diagram

__all__ = ["__version__", "build_diagram", "make_pair", "parse_diagram"]
