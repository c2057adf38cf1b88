"""Combination rules and independent joint assignments on product frames."""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum

from .core import FocalSet, Frame, MassAssignment
from .errors import FrameMismatch, FrameTooLarge, JointFrameTooLarge, TotalConflict
from .fb import FbBpa

COMBINATION_FRAME_LIMIT = 16
JOINT_DENSE_LIMIT = 24
_CONFLICT_EPS = 1e-12


def _check_pair(b1: MassAssignment, b2: MassAssignment) -> None:
    if b1.frame != b2.frame:
        raise FrameMismatch("combination requires a shared frame")
    if b1.frame.n > COMBINATION_FRAME_LIMIT:
        raise FrameTooLarge(f"combination is capped at n={COMBINATION_FRAME_LIMIT}")


def dempster_combine(b1: MassAssignment, b2: MassAssignment) -> tuple[MassAssignment, float]:
    """Dempster's rule: product masses on intersections, conflict mass K
    on empty intersections discarded and the rest rescaled by 1/(1-K).

    Returns (combined, K). Raises TotalConflict when K reaches 1.
    """
    _check_pair(b1, b2)
    acc: dict[int, list[float]] = {}
    conflict: list[float] = []
    for f1, v1 in b1.masses.items():
        for f2, v2 in b2.masses.items():
            meet = f1.mask & f2.mask
            if meet:
                acc.setdefault(meet, []).append(v1 * v2)
            else:
                conflict.append(v1 * v2)
    k = fsum(conflict)
    if k >= 1.0 - _CONFLICT_EPS:
        raise TotalConflict(f"conflict mass K={k!r}")
    scale = 1.0 - k
    combined = MassAssignment(
        b1.frame, {FocalSet(mask): fsum(parts) / scale for mask, parts in acc.items()}
    )
    return combined, k


def disjunctive_combine(b1: MassAssignment, b2: MassAssignment) -> MassAssignment:
    """Disjunctive rule: product masses accumulate on unions; conflict-free."""
    _check_pair(b1, b2)
    acc: dict[int, list[float]] = {}
    for f1, v1 in b1.masses.items():
        for f2, v2 in b2.masses.items():
            acc.setdefault(f1.mask | f2.mask, []).append(v1 * v2)
    return MassAssignment(b1.frame, {FocalSet(mask): fsum(parts) for mask, parts in acc.items()})


@dataclass(frozen=True)
class ProductFrame:
    """A joint frame over two independent frames, one position per pair."""

    left: Frame
    right: Frame
    joint: Frame

    @classmethod
    def build(cls, left: Frame, right: Frame) -> "ProductFrame":
        if left.n * right.n > 64:
            raise JointFrameTooLarge(f"joint frame would have {left.n * right.n} elements")
        labels = tuple(f"{a}×{b}" for a in left.labels for b in right.labels)
        return cls(left, right, Frame(labels))

    def position(self, i: int, j: int) -> int:
        return i * self.right.n + j

    def pair_set(self, g: FocalSet, h: FocalSet) -> FocalSet:
        """The joint subset G x H as a FocalSet of the joint frame."""
        mask = 0
        width = self.right.n
        sub = g.mask
        while sub:
            low = sub & -sub
            mask |= h.mask << ((low.bit_length() - 1) * width)
            sub ^= low
        return FocalSet(mask)


@dataclass(frozen=True)
class ProductFocalStructure:
    """The product-set support of an independent joint assignment."""

    product_frame: ProductFrame
    pairs: tuple[tuple[FocalSet, FocalSet, float], ...]

    def __post_init__(self) -> None:
        if any(g.mask == 0 or h.mask == 0 for g, h, _ in self.pairs):
            raise ValueError("product pairs must be nonempty on both sides")
        total = fsum(v for _, _, v in self.pairs)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"pair masses sum to {total!r}")


def joint_product(
    bx: MassAssignment, by: MassAssignment
) -> tuple[ProductFrame, ProductFocalStructure, MassAssignment]:
    """Independent joint BPA: mass m(G)m(H) on each product set G x H.

    Only product sets can carry mass, so the joint support has
    (number of X focal elements) * (number of Y focal elements) entries.
    """
    pf = ProductFrame.build(bx.frame, by.frame)
    pairs = []
    joint_masses: dict[FocalSet, float] = {}
    for g, vg in bx.masses.items():
        for h, vh in by.masses.items():
            pairs.append((g, h, vg * vh))
            joint_masses[pf.pair_set(g, h)] = vg * vh
    structure = ProductFocalStructure(pf, tuple(pairs))
    return pf, structure, MassAssignment(pf.joint, joint_masses)


def joint_fbbpa(structure: ProductFocalStructure) -> FbBpa:
    """Uniform split of an independent joint BPA, restricted to product sets.

    Each stored pair G x H spreads its mass equally over its
    (2^|G| - 1)(2^|H| - 1) nonempty sub-pairs A x B; non-product subsets of
    the joint frame never receive mass. The result factorizes as
    value(A x B) = split(A) * split(B), which is what makes the joint
    entropy additive for independent inputs.
    """
    pf = structure.product_frame
    if pf.joint.n > JOINT_DENSE_LIMIT:
        raise JointFrameTooLarge(f"joint split is capped at {JOINT_DENSE_LIMIT} joint elements")
    acc: dict[int, float] = {}
    for g, h, value in structure.pairs:
        share = value / (((1 << g.cardinality) - 1) * ((1 << h.cardinality) - 1))
        sub_g = g.mask
        while sub_g:
            sub_h = h.mask
            while sub_h:
                key = pf.pair_set(FocalSet(sub_g), FocalSet(sub_h)).mask
                acc[key] = acc.get(key, 0.0) + share
                sub_h = (sub_h - 1) & h.mask
            sub_g = (sub_g - 1) & g.mask
    return FbBpa(pf.joint, {FocalSet(m): v for m, v in sorted(acc.items())})
