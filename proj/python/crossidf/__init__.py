"""Two-level cross-array designs via polynomial indicator functions.

Thin wrapper over the compiled core: designs cross the boundary as occupancy
words (bit i = point i of the canonical order is in the design); exact
rationals come back as fractions.Fraction.
"""

from fractions import Fraction

from . import _core
from ._core import (
    anchored_representatives,
    canonical_word,
    classify_orbits,
    design_points,
    enumerate_words,
    is_estimable,
    marginal,
    profile_ok,
    quotient_basis_names,
    strength,
    word_from_points,
)

__all__ = [
    "anchored_representatives",
    "canonical_word",
    "classify_orbits",
    "confounding",
    "design_points",
    "enumerate_words",
    "indicator",
    "is_estimable",
    "marginal",
    "profile_ok",
    "quotient_basis_names",
    "strength",
    "word_from_points",
]


def indicator(word):
    """Nonzero indicator coefficients of a design, free space.

    Returns {frozenset of 0-based variable indices: Fraction}.
    """
    return {
        frozenset(support): Fraction(value)
        for support, value in _core.indicator_terms(word)
    }


def confounding(word):
    """Confounding matrix of a design with Fraction entries.

    Returns {"rows": [...], "columns": [...], "entries": [[Fraction]],
    "estimable_columns": [...]}.
    """
    raw = _core.confounding(word)
    raw["entries"] = [[Fraction(v) for v in row] for row in raw["entries"]]
    return raw
