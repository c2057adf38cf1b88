"""Belief, plausibility, and commonality functions derived from a BPA.

All queries iterate the stored focal elements only, so they stay cheap on
large frames with sparse assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum

from .core import FocalSet, MassAssignment
from .errors import EmptySetQuery, NotSingleton, UnknownElement


@dataclass(frozen=True)
class BeliefInterval:
    """[Bel, Pl] bounds for a focal element."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise ValueError(f"invalid belief interval [{self.lower}, {self.upper}]")


def _check_query(bpa: MassAssignment, focal: FocalSet) -> None:
    if focal.mask == 0:
        raise EmptySetQuery("belief queries need a nonempty set")
    if not bpa.frame.contains(focal):
        raise UnknownElement(f"mask {focal.mask:#x} sets positions outside the frame")


def bel(bpa: MassAssignment, focal: FocalSet) -> float:
    """Total mass committed to subsets of `focal`."""
    _check_query(bpa, focal)
    return fsum(v for f, v in bpa.masses.items() if f.issubset(focal))


def pl(bpa: MassAssignment, focal: FocalSet) -> float:
    """Total mass not contradicting `focal` (intersecting focal elements)."""
    _check_query(bpa, focal)
    return fsum(v for f, v in bpa.masses.items() if f.intersects(focal))


def commonality(bpa: MassAssignment, focal: FocalSet) -> float:
    """Total mass on supersets of `focal`, including `focal` itself."""
    _check_query(bpa, focal)
    return fsum(v for f, v in bpa.masses.items() if focal.issubset(f))


def belief_interval(bpa: MassAssignment, element: FocalSet) -> BeliefInterval:
    """The [Bel, Pl] interval of a single frame element."""
    _check_query(bpa, element)
    if element.cardinality != 1:
        raise NotSingleton("belief intervals are defined for single elements")
    # BPAs may carry up to 1e-9 of normalization slack; keep bounds in [0, 1].
    upper = min(pl(bpa, element), 1.0)
    lower = min(bel(bpa, element), upper)
    return BeliefInterval(lower, upper)
