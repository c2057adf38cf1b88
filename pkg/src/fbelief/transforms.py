"""Probability transformations and iterative mass-splitting processes.

The splitting step redistributes each focal element's mass uniformly over
its own nonempty subsets. Iterating it drains multi-element sets until the
assignment becomes a probability distribution; the limit is the pignistic
transform. Repeated Dempster fusion with the uniform assignment plays the
same role for the plausibility transform.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from math import fsum
from typing import IO, Iterable, Sequence

from .belief import pl
from .core import (
    DENSE_ENUMERATION_LIMIT,
    DiscreteDistribution,
    FocalSet,
    Frame,
    MassAssignment,
    enumerate_powerset,
)
from .errors import FrameTooLarge, NotThreeElementFrame, ParamOutOfRange

DEFAULT_TRACE_METRICS = ("hartley", "fb")


def betp(bpa: MassAssignment) -> DiscreteDistribution:
    """Pignistic transform: every focal element shares its mass equally
    among its members."""
    shares: list[list[float]] = [[] for _ in range(bpa.frame.n)]
    for focal, value in bpa.masses.items():
        part = value / focal.cardinality
        for i in focal.positions():
            shares[i].append(part)
    return DiscreteDistribution(bpa.frame, tuple(fsum(s) for s in shares))


def pnpl(bpa: MassAssignment) -> DiscreteDistribution:
    """Plausibility transform: singleton plausibilities, normalized."""
    values = [pl(bpa, s) for s in bpa.frame.singletons()]
    total = fsum(values)
    return DiscreteDistribution(bpa.frame, tuple(v / total for v in values))


def _split_masks(masses: Iterable[tuple[int, float]]) -> dict[int, float]:
    out: dict[int, float] = {}
    for mask, value in masses:
        share = value / ((1 << mask.bit_count()) - 1)
        sub = mask
        while sub:
            out[sub] = out.get(sub, 0.0) + share
            sub = (sub - 1) & mask
    return out


def uniform_split_step(bpa: MassAssignment) -> MassAssignment:
    """One uniform splitting step: each focal element's mass is divided
    equally over its 2^|F| - 1 nonempty subsets (itself included)."""
    if bpa.frame.n > DENSE_ENUMERATION_LIMIT:
        raise FrameTooLarge("the split step may touch the full power set; n is capped at 24")
    out = _split_masks((f.mask, v) for f, v in bpa.masses.items())
    return MassAssignment(bpa.frame, {FocalSet(m): v for m, v in out.items()})


def parametrized_split_step_3(bpa: MassAssignment, p: float) -> MassAssignment:
    """One splitting step on a 3-element frame with tunable speed.

    Pairs hand m(G)/p to each of their two members and keep the rest; the
    triple hands m(H)/q to each of the six proper nonempty subsets with
    q = p + 4 and keeps (1 - 6/q). p = 3 reproduces the uniform step.
    """
    frame = bpa.frame
    if frame.n != 3:
        raise NotThreeElementFrame(f"frame has {frame.n} elements")
    if p < 3:
        raise ParamOutOfRange(f"p must be at least 3, got {p!r}")
    q = p + 4.0
    out: dict[int, float] = {}

    def add(mask: int, value: float) -> None:
        out[mask] = out.get(mask, 0.0) + value

    for focal, value in bpa.masses.items():
        mask = focal.mask
        size = focal.cardinality
        if size == 1:
            add(mask, value)
        elif size == 2:
            add(mask, (1.0 - 2.0 / p) * value)
            for i in focal.positions():
                add(1 << i, value / p)
        else:
            add(mask, (1.0 - 6.0 / q) * value)
            for sub in (1, 2, 4, 3, 5, 6):
                add(sub, value / q)
    return MassAssignment(frame, {FocalSet(m): v for m, v in out.items()})


@dataclass(frozen=True)
class TraceStep:
    """One recorded state of an iterative process (step 0 is the input)."""

    index: int
    bpa: MassAssignment
    metrics: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class SplitTrace:
    steps: tuple[TraceStep, ...]
    converged: bool
    final: MassAssignment


def _non_singleton_mass(bpa: MassAssignment) -> float:
    return fsum(v for f, v in bpa.masses.items() if f.cardinality > 1)


def _metric_values(bpa: MassAssignment, metrics: Sequence[str]) -> dict[str, float]:
    if not metrics:
        return {}
    from .measures import measure  # deferred: measures depends on this module

    return {name: measure(name, bpa) for name in metrics}


def iterate_split(
    bpa: MassAssignment,
    kernel: str = "uniform",
    *,
    p: float | None = None,
    max_steps: int = 10_000,
    tol: float = 1e-9,
    metrics: Sequence[str] = DEFAULT_TRACE_METRICS,
) -> SplitTrace:
    """Iterate a splitting kernel until the non-singleton mass drops below
    `tol` or `max_steps` is exhausted.

    `kernel` is "uniform" or "param3"; the latter needs `p` (>= 3).
    """
    if kernel == "uniform":
        step = uniform_split_step
    elif kernel == "param3":
        if p is None:
            raise ParamOutOfRange("kernel 'param3' needs the parameter p")

        def step(b: MassAssignment) -> MassAssignment:
            return parametrized_split_step_3(b, p)

    else:
        raise ParamOutOfRange(f"unknown kernel {kernel!r}")

    current = bpa
    steps = [TraceStep(0, current, _metric_values(current, metrics))]
    converged = _non_singleton_mass(current) < tol
    for index in range(1, max_steps + 1):
        if converged:
            break
        current = step(current)
        steps.append(TraceStep(index, current, _metric_values(current, metrics)))
        converged = _non_singleton_mass(current) < tol
    return SplitTrace(tuple(steps), converged, current)


def uniform_bpa(frame: Frame) -> MassAssignment:
    """The uniform assignment: 1/(2^n - 1) on every nonempty subset."""
    sets = enumerate_powerset(frame)
    value = 1.0 / len(sets)
    return MassAssignment(frame, {f: value for f in sets})


def ptm_fusion_process(
    bpa: MassAssignment,
    *,
    max_steps: int = 10_000,
    tol: float = 1e-9,
    metrics: Sequence[str] = DEFAULT_TRACE_METRICS,
) -> SplitTrace:
    """Repeatedly Dempster-combine with the uniform assignment.

    Singleton masses converge to the plausibility transform of the input;
    the process stops when they change by less than `tol` between steps.
    """
    from .combine import dempster_combine  # deferred: combine depends on fb types

    if bpa.frame.n > 16:
        raise FrameTooLarge("fusion enumerates the uniform partner's power set; n is capped at 16")
    partner = uniform_bpa(bpa.frame)
    singles = bpa.frame.singletons()

    current = bpa
    steps = [TraceStep(0, current, _metric_values(current, metrics))]
    converged = False
    for index in range(1, max_steps + 1):
        combined, _ = dempster_combine(current, partner)
        steps.append(TraceStep(index, combined, _metric_values(combined, metrics)))
        delta = max(abs(combined.mass(s) - current.mass(s)) for s in singles)
        current = combined
        if delta < tol:
            converged = True
            break
    return SplitTrace(tuple(steps), converged, current)


def negation_step(bpa: MassAssignment) -> MassAssignment:
    """One negation: each focal element's mass moves uniformly onto the
    nonempty supersets of its complement; the full set keeps its own mass.
    Ignorance never decreases under this map."""
    frame = bpa.frame
    full = frame.full_set.mask
    out: dict[int, float] = {}
    for focal, value in bpa.masses.items():
        if focal.mask == full:
            out[full] = out.get(full, 0.0) + value
            continue
        base = full & ~focal.mask
        share = value / (1 << focal.cardinality)
        sub = focal.mask
        while True:
            target = base | sub
            out[target] = out.get(target, 0.0) + share
            if sub == 0:
                break
            sub = (sub - 1) & focal.mask
    return MassAssignment(frame, {FocalSet(m): v for m, v in out.items()})


def write_trace_csv(trace: SplitTrace, stream: IO[str]) -> None:
    """Write `step,<set columns>,<metric columns>` rows, sets in canonical
    order over the whole power set, absent masses as 0."""
    frame = trace.final.frame
    sets = enumerate_powerset(frame)
    metric_names = list(trace.steps[0].metrics)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["step", *(frame.format_set(f) for f in sets), *metric_names])
    for step in trace.steps:
        row: list[object] = [step.index]
        row.extend(repr(step.bpa.mass(f)) for f in sets)
        row.extend(repr(step.metrics[name]) for name in metric_names)
        writer.writerow(row)
