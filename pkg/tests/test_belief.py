import math
import random
from itertools import chain, combinations

import pytest

from fbelief import (
    Frame,
    MassAssignment,
    bel,
    belief_interval,
    commonality,
    enumerate_powerset,
    pl,
)
from fbelief.errors import EmptySetQuery, NotSingleton

from conftest import build, random_bpa


def frozenset_oracle(bpa):
    """Reference Bel/Pl/q over frozensets, straight from the definitions."""
    frame = bpa.frame
    stored = {
        frozenset(frame.labels[i] for i in f.positions()): v for f, v in bpa.masses.items()
    }

    def bel_(target):
        return sum(v for s, v in stored.items() if s <= target)

    def pl_(target):
        return sum(v for s, v in stored.items() if s & target)

    def q_(target):
        return sum(v for s, v in stored.items() if target <= s)

    return bel_, pl_, q_


class TestPointQueries:
    def test_running_example(self, eppf):
        a = eppf.frame.singleton("a")
        ab = eppf.frame.full_set
        assert bel(eppf, a) == pytest.approx(0.2, abs=1e-12)
        assert pl(eppf, a) == pytest.approx(0.6, abs=1e-12)
        assert commonality(eppf, a) == pytest.approx(0.6, abs=1e-12)
        assert commonality(eppf, ab) == pytest.approx(0.4, abs=1e-12)
        assert bel(eppf, ab) == 1.0

    def test_total_ignorance(self):
        bpa = build("ab", {"a|b": 1.0})
        a = bpa.frame.singleton("a")
        assert bel(bpa, a) == 0.0
        assert pl(bpa, a) == 1.0
        assert commonality(bpa, a) == 1.0

    def test_bel_of_frame_is_one(self):
        rng = random.Random(3)
        for _ in range(20):
            bpa = random_bpa(rng, rng.randint(1, 6))
            assert bel(bpa, bpa.frame.full_set) == pytest.approx(1.0, abs=1e-9)

    def test_empty_query_rejected(self, eppf):
        from fbelief import FocalSet

        for fn in (bel, pl, commonality):
            with pytest.raises(EmptySetQuery):
                fn(eppf, FocalSet(0))


class TestBeliefInterval:
    def test_vacuous_interval(self):
        bpa = MassAssignment.vacuous(Frame(("a", "b", "c", "d")))
        iv = belief_interval(bpa, bpa.frame.singleton("a"))
        assert (iv.lower, iv.upper) == (0.0, 1.0)

    def test_cycle_pairs_interval(self, table4_cycle):
        for label in "abcd":
            iv = belief_interval(table4_cycle, table4_cycle.frame.singleton(label))
            assert iv.lower == 0.0
            assert iv.upper == pytest.approx(0.5, abs=1e-12)

    def test_running_example(self, eppf):
        iv = belief_interval(eppf, eppf.frame.singleton("a"))
        assert (iv.lower, iv.upper) == (pytest.approx(0.2), pytest.approx(0.6))

    def test_requires_singleton(self, eppf):
        with pytest.raises(NotSingleton):
            belief_interval(eppf, eppf.frame.full_set)


class TestAgainstFrozensetOracle:
    def test_random_agreement(self):
        rng = random.Random(11)
        for _ in range(30):
            bpa = random_bpa(rng, rng.randint(1, 6))
            bel_, pl_, q_ = frozenset_oracle(bpa)
            frame = bpa.frame
            for fs in enumerate_powerset(frame):
                target = frozenset(frame.labels[i] for i in fs.positions())
                assert bel(bpa, fs) == pytest.approx(bel_(target), abs=1e-9)
                assert pl(bpa, fs) == pytest.approx(pl_(target), abs=1e-9)
                assert commonality(bpa, fs) == pytest.approx(q_(target), abs=1e-9)


class TestStructuralProperties:
    def test_duality_and_ordering(self):
        rng = random.Random(23)
        for _ in range(40):
            bpa = random_bpa(rng, rng.randint(2, 7))
            frame = bpa.frame
            for fs in enumerate_powerset(frame):
                comp = frame.complement(fs)
                dual = 1.0 - (pl(bpa, comp) if comp.mask else 0.0)
                assert abs(bel(bpa, fs) - dual) <= 1e-12
                assert bel(bpa, fs) <= pl(bpa, fs) + 1e-15

    def test_monotone_under_inclusion(self):
        rng = random.Random(29)
        for _ in range(20):
            bpa = random_bpa(rng, 5)
            sets = enumerate_powerset(bpa.frame)
            for f in sets:
                for g in sets:
                    if f.issubset(g):
                        assert bel(bpa, f) <= bel(bpa, g) + 1e-15
                        assert pl(bpa, f) <= pl(bpa, g) + 1e-15

    def test_bayesian_bel_equals_pl(self):
        bpa = build("abc", {"a": 0.2, "b": 0.3, "c": 0.5})
        for fs in enumerate_powerset(bpa.frame):
            assert bel(bpa, fs) == pytest.approx(pl(bpa, fs), abs=1e-12)

    def test_mobius_inversion_recovers_masses(self):
        # m(A) = sum over B subset A of (-1)^{|A \ B|} Bel(B), the classic
        # inclusion-exclusion inverse, applied over label subsets.
        rng = random.Random(31)
        for _ in range(10):
            n = rng.randint(1, 6)
            bpa = random_bpa(rng, n)
            frame = bpa.frame
            labels = list(frame.labels)
            for target in chain.from_iterable(
                combinations(labels, r) for r in range(1, n + 1)
            ):
                target_set = set(target)
                total = 0.0
                for r in range(len(target) + 1):
                    for sub in combinations(target, r):
                        if sub:
                            value = bel(bpa, frame.subset(sub))
                        else:
                            value = 0.0
                        total += (-1) ** (len(target_set) - r) * value
                expected = bpa.mass(frame.subset(target))
                assert math.isclose(total, expected, abs_tol=1e-9)
