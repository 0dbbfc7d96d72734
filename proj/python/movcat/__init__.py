"""Finite categories, movability and uniform movability."""

from ._core import (
    Category,
    MovcatError,
    Workspace,
    decide,
    decide_category,
    decide_co,
    run,
    verify_witness,
)

__all__ = [
    "Category",
    "MovcatError",
    "Workspace",
    "decide",
    "decide_category",
    "decide_co",
    "run",
    "verify_witness",
]
