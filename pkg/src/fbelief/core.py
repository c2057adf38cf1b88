"""Frames, focal sets, and mass assignments.

Focal sets are bitmasks over the frame's label positions, so a frame may
hold up to 64 elements (one machine word). All types are immutable values;
every operation in the package is a pure function over them.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from math import fsum
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    EmptyFocalSet,
    FrameTooLarge,
    MalformedDocument,
    MassOutOfRange,
    NotNormalized,
    RenormalizedMassWarning,
    UnknownElement,
)

MAX_FRAME_SIZE = 64
DENSE_ENUMERATION_LIMIT = 24
MASS_SUM_TOLERANCE = 1e-9
PARSE_REJECT_TOLERANCE = 1e-6
LABEL_SEPARATOR = "|"


@dataclass(frozen=True, order=True)
class FocalSet:
    """A subset of a frame, encoded as a bitmask over label positions."""

    mask: int

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __and__(self, other: "FocalSet") -> "FocalSet":
        return FocalSet(self.mask & other.mask)

    def __or__(self, other: "FocalSet") -> "FocalSet":
        return FocalSet(self.mask | other.mask)

    def issubset(self, other: "FocalSet") -> bool:
        return self.mask & ~other.mask == 0

    def intersects(self, other: "FocalSet") -> bool:
        return self.mask & other.mask != 0

    def positions(self) -> Iterable[int]:
        """Yield the set bit positions in ascending order."""
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low


@dataclass(frozen=True)
class Frame:
    """An ordered frame of discernment with up to 64 distinct labels."""

    labels: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("a frame needs at least one element")
        if len(labels) > MAX_FRAME_SIZE:
            raise FrameTooLarge(f"frame has {len(labels)} elements, limit is {MAX_FRAME_SIZE}")
        if any(not isinstance(lbl, str) or not lbl for lbl in labels):
            raise ValueError("frame labels must be nonempty strings")
        if len(set(labels)) != len(labels):
            raise ValueError("frame labels must be distinct")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", {lbl: i for i, lbl in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_set(self) -> FocalSet:
        return FocalSet((1 << self.n) - 1)

    def contains(self, focal: FocalSet) -> bool:
        return focal.mask & ~self.full_set.mask == 0

    def complement(self, focal: FocalSet) -> FocalSet:
        return FocalSet(self.full_set.mask & ~focal.mask)

    def singleton(self, label: str) -> FocalSet:
        return FocalSet(1 << self.position(label))

    def singletons(self) -> tuple[FocalSet, ...]:
        return tuple(FocalSet(1 << i) for i in range(self.n))

    def position(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"label {label!r} is not in the frame") from None

    def subset(self, labels: Iterable[str]) -> FocalSet:
        mask = 0
        for label in labels:
            mask |= 1 << self.position(label)
        return FocalSet(mask)

    def parse_set(self, text: str) -> FocalSet:
        """Parse the canonical text form: labels joined by '|'."""
        if text == "":
            raise EmptyFocalSet("focal-set text is empty")
        return self.subset(text.split(LABEL_SEPARATOR))

    def format_set(self, focal: FocalSet) -> str:
        """Canonical text form: member labels joined by '|' in frame order."""
        return LABEL_SEPARATOR.join(self.labels[i] for i in focal.positions())


@dataclass(frozen=True)
class MassAssignment:
    """A normalized basic probability assignment over a frame.

    Only strictly positive masses on nonempty focal sets are stored; the
    stored values must sum to 1 within ``MASS_SUM_TOLERANCE``.
    """

    frame: Frame
    masses: Mapping[FocalSet, float]

    def __post_init__(self) -> None:
        cleaned: dict[FocalSet, float] = {}
        for focal, value in self.masses.items():
            if not isinstance(focal, FocalSet):
                focal = FocalSet(int(focal))
            if focal.mask == 0:
                raise EmptyFocalSet("the empty set cannot carry mass")
            if not self.frame.contains(focal):
                raise UnknownElement(f"mask {focal.mask:#x} sets positions outside the frame")
            if value < 0.0 or value > 1.0 + MASS_SUM_TOLERANCE:
                raise MassOutOfRange(f"mass {value!r} outside [0, 1]")
            if value > 0.0:
                # arithmetic may overshoot 1 by a rounding error; clamp it
                cleaned[focal] = min(value, 1.0)
        total = fsum(cleaned.values())
        if abs(total - 1.0) > MASS_SUM_TOLERANCE:
            raise NotNormalized(f"masses sum to {total!r}")
        ordered = dict(sorted(cleaned.items()))
        object.__setattr__(self, "masses", MappingProxyType(ordered))

    @classmethod
    def from_labels(cls, frame: Frame, masses: Mapping[str, float]) -> "MassAssignment":
        """Build from a {'a|b': mass} mapping with '|'-joined label keys."""
        return cls(frame, {frame.parse_set(key): value for key, value in masses.items()})

    @classmethod
    def vacuous(cls, frame: Frame) -> "MassAssignment":
        return cls(frame, {frame.full_set: 1.0})

    def mass(self, focal: FocalSet) -> float:
        return self.masses.get(focal, 0.0)

    def by_label(self) -> dict[str, float]:
        """Masses keyed by canonical text form, in canonical set order."""
        return {self.frame.format_set(f): v for f, v in self.masses.items()}


@dataclass(frozen=True)
class DiscreteDistribution:
    """A probability distribution over the frame's elements."""

    frame: Frame
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        if len(probs) != self.frame.n:
            raise ValueError("probability vector length must equal the frame size")
        if any(p < 0.0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(fsum(probs) - 1.0) > MASS_SUM_TOLERANCE:
            raise NotNormalized(f"probabilities sum to {fsum(probs)!r}")
        object.__setattr__(self, "probs", probs)

    def by_label(self) -> dict[str, float]:
        return dict(zip(self.frame.labels, self.probs))


def enumerate_powerset(frame: Frame) -> list[FocalSet]:
    """All 2^n - 1 nonempty subsets of the frame in ascending mask order.

    Dense enumeration is capped at n = 24; larger frames must go through
    the sparse code paths.
    """
    if frame.n > DENSE_ENUMERATION_LIMIT:
        raise FrameTooLarge(f"dense power-set enumeration is capped at n={DENSE_ENUMERATION_LIMIT}")
    return [FocalSet(mask) for mask in range(1, 1 << frame.n)]


def is_bayesian(bpa: MassAssignment) -> bool:
    """True iff every focal element is a singleton."""
    return all(f.cardinality == 1 for f in bpa.masses)


def parse_bpa(document: str) -> MassAssignment:
    """Parse and validate a BPA document.

    The document is a JSON object with a "frame" array of distinct label
    strings and a "masses" object mapping '|'-joined labels to numbers; an
    optional "comment" string is ignored. Mass sums farther than 1e-6 from
    1 are rejected; sums within (1e-9, 1e-6] are rescaled to 1 and flagged
    with a RenormalizedMassWarning.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise MalformedDocument("top-level value must be an object")
    extra = set(raw) - {"frame", "masses", "comment"}
    if extra:
        raise MalformedDocument(f"unknown keys: {sorted(extra)}")
    if "comment" in raw and not isinstance(raw["comment"], str):
        raise MalformedDocument("comment must be a string")
    labels = raw.get("frame")
    if not isinstance(labels, list) or not all(isinstance(lbl, str) for lbl in labels):
        raise MalformedDocument("frame must be an array of strings")
    try:
        frame = Frame(tuple(labels))
    except ValueError as exc:
        raise MalformedDocument(str(exc)) from exc
    entries = raw.get("masses")
    if not isinstance(entries, dict):
        raise MalformedDocument("masses must be an object")

    masses: dict[FocalSet, float] = {}
    for key, value in entries.items():
        focal = frame.parse_set(key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise MalformedDocument(f"mass for {key!r} must be a number")
        value = float(value)
        if value < 0.0 or value > 1.0:
            raise MassOutOfRange(f"mass for {key!r} is {value!r}, outside [0, 1]")
        if focal in masses:
            raise MalformedDocument(f"duplicate focal set {frame.format_set(focal)!r}")
        masses[focal] = value

    total = fsum(v for v in masses.values())
    if abs(total - 1.0) > PARSE_REJECT_TOLERANCE:
        raise NotNormalized(f"masses sum to {total!r}")
    if abs(total - 1.0) > MASS_SUM_TOLERANCE:
        warnings.warn(
            f"masses sum to {total!r}; rescaling to 1", RenormalizedMassWarning, stacklevel=2
        )
        masses = {f: v / total for f, v in masses.items()}
    return MassAssignment(frame, masses)


def serialize_bpa(bpa: MassAssignment, comment: str | None = None) -> str:
    """Serialize to the canonical BPA document form (round-trips exactly)."""
    payload: dict[str, object] = {"frame": list(bpa.frame.labels)}
    if comment is not None:
        payload["comment"] = comment
    payload["masses"] = bpa.by_label()
    return json.dumps(payload, indent=2)
