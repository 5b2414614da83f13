"""Grounding-based satisfiability for the Bernays-Schoenfinkel class."""

from ._errors import BsatError
from ._bsat import (
    classify,
    dpll,
    emit_dimacs,
    find_model,
    pad,
    pretty,
    read_dimacs,
    solve,
    unpad,
)

__all__ = [
    "BsatError",
    "classify",
    "dpll",
    "emit_dimacs",
    "find_model",
    "pad",
    "pretty",
    "read_dimacs",
    "solve",
    "unpad",
]
