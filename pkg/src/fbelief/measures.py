"""The comparison zoo of uncertainty measures over mass assignments.

All measures take (bpa, base) and return a scalar; the registry keys are
the stable public ids used by the CLI. 0 log 0 counts as 0 throughout and
zero commonalities are dropped.
"""

from __future__ import annotations

from math import fsum, log, sqrt

from .belief import bel, pl
from .core import DiscreteDistribution, MassAssignment
from .errors import FrameTooLarge, UnsupportedDecomposition
from .fb import decompose, fb_entropy, shannon_entropy
from .transforms import betp, pnpl

POWERSET_MEASURE_LIMIT = 16
AU_FRAME_LIMIT = 12
GENERAL_MEASURE_LIMIT = 24


def _require(bpa: MassAssignment, limit: int, name: str) -> None:
    if bpa.frame.n > limit:
        raise FrameTooLarge(f"measure {name!r} is capped at n={limit}")


def _ambiguity(bpa: MassAssignment, base: float) -> float:
    """Shannon entropy of the pignistic transform."""
    _require(bpa, GENERAL_MEASURE_LIMIT, "am")
    return shannon_entropy(betp(bpa).probs, base)


def _hohle(bpa: MassAssignment, base: float) -> float:
    """Confusion: -sum m(F) log Bel(F)."""
    _require(bpa, GENERAL_MEASURE_LIMIT, "hohle")
    return -fsum(v * log(bel(bpa, f)) for f, v in bpa.masses.items()) / log(base)


def _yager(bpa: MassAssignment, base: float) -> float:
    """Dissonance: -sum m(F) log Pl(F)."""
    _require(bpa, GENERAL_MEASURE_LIMIT, "yager")
    return -fsum(v * log(pl(bpa, f)) for f, v in bpa.masses.items()) / log(base)


def _hartley(bpa: MassAssignment, base: float) -> float:
    """Non-specificity: sum m(F) log |F|."""
    _require(bpa, GENERAL_MEASURE_LIMIT, "hartley")
    return fsum(v * log(f.cardinality) for f, v in bpa.masses.items()) / log(base)


def _klir_parviz(bpa: MassAssignment, base: float) -> float:
    """Discord: -sum m(F) log sum_G m(G) |F n G| / |G|."""
    _require(bpa, POWERSET_MEASURE_LIMIT, "klir_parviz")
    items = list(bpa.masses.items())
    total = 0.0
    for f, v in items:
        inner = fsum(w * (f & g).cardinality / g.cardinality for g, w in items)
        total -= v * log(inner)
    return total / log(base)


def _pal(bpa: MassAssignment, base: float) -> float:
    """sum m(F) log(|F| / m(F))."""
    _require(bpa, GENERAL_MEASURE_LIMIT, "pal")
    return fsum(v * log(f.cardinality / v) for f, v in bpa.masses.items()) / log(base)


def _deng(bpa: MassAssignment, base: float) -> float:
    """sum m(F) log((2^|F| - 1) / m(F))."""
    _require(bpa, GENERAL_MEASURE_LIMIT, "deng")
    return fsum(v * log(((1 << f.cardinality) - 1) / v) for f, v in bpa.masses.items()) / log(base)


def _su(bpa: MassAssignment, base: float) -> float:
    """Per element: entropy of the interval midpoint plus the interval width."""
    _require(bpa, GENERAL_MEASURE_LIMIT, "su")
    total = 0.0
    for s in bpa.frame.singletons():
        lower, upper = bel(bpa, s), pl(bpa, s)
        mid = (lower + upper) / 2.0
        if mid > 0.0:
            total -= mid * log(mid) / log(base)
        total += upper - lower
    return total


def _js(bpa: MassAssignment, base: float) -> float:
    """Hartley part plus the Shannon entropy of the plausibility transform."""
    _require(bpa, GENERAL_MEASURE_LIMIT, "js")
    return _hartley(bpa, base) + shannon_entropy(pnpl(bpa).probs, base)


def _decomposable(bpa: MassAssignment, base: float) -> float:
    """sum over the power set of (-1)^|F| q(F) log q(F), zero q dropped."""
    _require(bpa, POWERSET_MEASURE_LIMIT, "decomposable")
    items = list(bpa.masses.items())
    total = 0.0
    for mask in range(1, 1 << bpa.frame.n):
        q = fsum(v for f, v in items if mask & ~f.mask == 0)
        if q > 0.0:
            sign = -1.0 if mask.bit_count() % 2 else 1.0
            total += sign * q * log(q)
    return total / log(base)


def _yang_han(bpa: MassAssignment, base: float) -> float:
    """1 - (sqrt(3)/n) * sum of interval distances to total ignorance [0, 1].

    The interval distance is sqrt((midpoint gap)^2 + (half-width gap)^2 / 3),
    which pins the measure to 1 on the vacuous BPA and 0 on certainty.
    """
    _require(bpa, GENERAL_MEASURE_LIMIT, "yang_han")
    acc = 0.0
    for s in bpa.frame.singletons():
        lower, upper = bel(bpa, s), pl(bpa, s)
        mid_gap = (lower + upper) / 2.0 - 0.5
        width_gap = (upper - lower) / 2.0 - 0.5
        acc += sqrt(mid_gap**2 + width_gap**2 / 3.0)
    return 1.0 - sqrt(3.0) / bpa.frame.n * acc


def _fb(bpa: MassAssignment, base: float) -> float:
    return fb_entropy(bpa, base)


def au_distribution(bpa: MassAssignment) -> DiscreteDistribution:
    """The maximum-entropy distribution inside the BPA's credal set.

    Greedy construction: pick the subset of the remaining frame whose
    conditioned belief per element is largest (ties to larger sets, then
    ascending mask), spread that belief uniformly over the subset, remove
    it, and repeat.
    """
    frame = bpa.frame
    if frame.n > AU_FRAME_LIMIT:
        raise FrameTooLarge(f"the credal maximizer is capped at n={AU_FRAME_LIMIT}")

    # Dense belief table via a subset-sum sweep over the power set.
    bel_table = [0.0] * (1 << frame.n)
    for f, v in bpa.masses.items():
        bel_table[f.mask] += v
    for i in range(frame.n):
        bit = 1 << i
        for mask in range(1 << frame.n):
            if mask & bit:
                bel_table[mask] += bel_table[mask ^ bit]

    probs = [0.0] * frame.n
    remaining = frame.full_set.mask
    assigned = 0
    while remaining:
        best_key: tuple[float, int, int] | None = None
        best_sub = 0
        sub = remaining
        while sub:
            value = bel_table[sub | assigned] - bel_table[assigned]
            key = (value / sub.bit_count(), sub.bit_count(), -sub)
            if best_key is None or key > best_key:
                best_key, best_sub = key, sub
            sub = (sub - 1) & remaining
        ratio = max(best_key[0], 0.0)
        mask = best_sub
        while mask:
            low = mask & -mask
            probs[low.bit_length() - 1] = ratio
            mask ^= low
        assigned |= best_sub
        remaining &= ~best_sub
    return DiscreteDistribution(frame, tuple(probs))


def au(bpa: MassAssignment, base: float = 2) -> float:
    """Aggregate uncertainty: the maximum Shannon entropy over the credal set."""
    return shannon_entropy(au_distribution(bpa).probs, base)


def _au_measure(bpa: MassAssignment, base: float) -> float:
    return au(bpa, base)


_MEASURES = {
    "am": _ambiguity,
    "hohle": _hohle,
    "yager": _yager,
    "hartley": _hartley,
    "klir_parviz": _klir_parviz,
    "au": _au_measure,
    "pal": _pal,
    "deng": _deng,
    "su": _su,
    "js": _js,
    "decomposable": _decomposable,
    "yang_han": _yang_han,
    "fb": _fb,
}

MEASURE_IDS = tuple(_MEASURES)


def measure(measure_id: str, bpa: MassAssignment, base: float = 2) -> float:
    """Evaluate a registered measure by id."""
    try:
        fn = _MEASURES[measure_id]
    except KeyError:
        raise ValueError(f"unknown measure {measure_id!r}; known: {', '.join(MEASURE_IDS)}") from None
    return fn(bpa, base)


def nonspecificity(measure_id: str, bpa: MassAssignment, base: float = 2) -> float:
    """The non-specificity component of measures that define one."""
    if measure_id in ("js", "pal"):
        return _hartley(bpa, base)
    if measure_id == "su":
        return fsum(pl(bpa, s) - bel(bpa, s) for s in bpa.frame.singletons())
    if measure_id == "deng":
        return fsum(
            v * log((1 << f.cardinality) - 1) for f, v in bpa.masses.items()
        ) / log(base)
    if measure_id == "fb":
        return decompose(bpa, base).nonspecificity
    raise UnsupportedDecomposition(f"measure {measure_id!r} has no non-specificity component")
