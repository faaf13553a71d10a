"""Combinatorial calculus for 3-fold simple branched coverings of the 3-sphere.

Colored closed braids are rewritten into a standard link, pushed through a
tower of cyclic quotients and finally through a 27-sheeted crystallographic
covering branched over the Borromean rings.  Every step produces data that
can be re-checked independently.
"""

from covercalc.diagram import (
    BraidWord,
    ColoredBraid,
    Color,
    ClosureViolation,
    BraidParseError,
    check_simple_transitive,
    closure_components,
    enumerate_colorings,
    parse_braid,
    propagate_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "ColoredBraid",
    "Color",
    "ClosureViolation",
    "BraidParseError",
    "check_simple_transitive",
    "closure_components",
    "enumerate_colorings",
    "parse_braid",
    "propagate_coloring",
]
