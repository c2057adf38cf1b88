"""Fractal belief entropy: the Shannon entropy of a one-step uniform split.

Splitting a BPA once spreads each focal element's mass uniformly over its
nonempty subsets; the entropy of the resulting assignment measures total
uncertainty. It degenerates to Shannon entropy on Bayesian inputs and
peaks at log(2^n - 1) on the vacuous assignment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import fsum, log, log1p
from typing import Iterable, Mapping

from .core import (
    DENSE_ENUMERATION_LIMIT,
    MAX_FRAME_SIZE,
    FocalSet,
    Frame,
    MassAssignment,
    is_bayesian,
)
from .errors import FrameTooLarge, TooManyFocalElements
from .transforms import betp, uniform_split_step

SPARSE_FOCAL_LIMIT = 20


def shannon_entropy(values: Iterable[float], base: float = 2) -> float:
    """-sum(v log v) with the 0 log 0 = 0 convention."""
    return -fsum(v * log(v) for v in values if v > 0.0) / log(base)


@dataclass(frozen=True)
class FbBpa:
    """The split assignment: values over every set reachable by splitting."""

    frame: Frame
    values: Mapping[FocalSet, float]

    def entropy(self, base: float = 2) -> float:
        return shannon_entropy(self.values.values(), base)

    def value(self, focal: FocalSet) -> float:
        return self.values.get(focal, 0.0)


@dataclass(frozen=True)
class EntropyReport:
    """Total uncertainty split into discord and non-specificity parts."""

    total: float
    discord: float
    nonspecificity: float
    base: float

    def as_dict(self) -> dict[str, float]:
        return {
            "total": self.total,
            "discord": self.discord,
            "nonspecificity": self.nonspecificity,
            "base": self.base,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def fbbpa(bpa: MassAssignment) -> FbBpa:
    """The one-step uniform split of a BPA (dense; frame capped at n=24)."""
    split = uniform_split_step(bpa)
    return FbBpa(bpa.frame, dict(split.masses))


def max_fb_entropy(n: int, base: float = 2) -> float:
    """log_base(2^n - 1), evaluated as n log 2 + log1p(-2^-n) for stability."""
    if not 1 <= n <= MAX_FRAME_SIZE:
        raise ValueError(f"frame size must be in 1..{MAX_FRAME_SIZE}, got {n}")
    return (n * log(2.0) + log1p(-(2.0**-n))) / log(base)


def fb_entropy(bpa: MassAssignment, base: float = 2) -> float:
    """Fractal belief entropy of a BPA.

    Dense evaluation up to n = 24; beyond that Bayesian inputs use their
    Shannon entropy directly (the two coincide exactly) and everything
    else goes through the sparse evaluator.
    """
    if bpa.frame.n <= DENSE_ENUMERATION_LIMIT:
        return fbbpa(bpa).entropy(base)
    if is_bayesian(bpa):
        return shannon_entropy(bpa.masses.values(), base)
    return fb_entropy_sparse(bpa, base)


def fb_entropy_sparse(bpa: MassAssignment, base: float = 2) -> float:
    """Exact fractal belief entropy without touching the power set.

    Every nonempty set S takes the split value v(T) = sum of m(F_i)/(2^|F_i|-1)
    over its signature T = {i : S is a subset of F_i}, so the entropy is a sum
    over signatures of count(T) * v(T) * log(1/v(T)). Signature populations
    come from an inclusion-exclusion (Moebius) pass over the 2^k subsets of
    the focal-element index set, with exact integer subset counts; k is
    capped at 20.
    """
    focals = list(bpa.masses.items())
    k = len(focals)
    if k > SPARSE_FOCAL_LIMIT:
        raise TooManyFocalElements(f"{k} focal elements; the sparse evaluator supports {SPARSE_FOCAL_LIMIT}")

    weights = [v / ((1 << f.cardinality) - 1) for f, v in focals]
    masks = [f.mask for f, _ in focals]

    size = 1 << k
    inter = [0] * size
    value = [0.0] * size
    counts = [0] * size
    inter[0] = bpa.frame.full_set.mask
    counts[0] = (1 << bpa.frame.n) - 1
    for t in range(1, size):
        low = t & -t
        i = low.bit_length() - 1
        rest = t ^ low
        inter[t] = inter[rest] & masks[i]
        value[t] = value[rest] + weights[i]
        counts[t] = (1 << inter[t].bit_count()) - 1

    # Moebius over the superset lattice: counts[t] becomes the number of
    # nonempty sets whose signature is exactly t.
    for i in range(k):
        bit = 1 << i
        for t in range(size):
            if not t & bit:
                counts[t] -= counts[t | bit]

    total = 0.0
    for t in range(1, size):
        c = counts[t]
        if c > 0:
            v = value[t]
            total -= c * v * log(v)
    return total / log(base)


def decompose(bpa: MassAssignment, base: float = 2) -> EntropyReport:
    """Split total uncertainty into discord (entropy of the pignistic
    transform) and non-specificity (the remainder)."""
    total = fb_entropy(bpa, base)
    discord = shannon_entropy(betp(bpa).probs, base)
    return EntropyReport(total, discord, total - discord, base)
