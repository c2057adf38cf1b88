import io
import math
import random
from math import fsum, log2

import pytest

from fbelief import (
    Frame,
    MassAssignment,
    betp,
    enumerate_powerset,
    iterate_split,
    negation_step,
    parametrized_split_step_3,
    pnpl,
    ptm_fusion_process,
    uniform_bpa,
    uniform_split_step,
    write_trace_csv,
)
from fbelief.errors import FrameTooLarge, NotThreeElementFrame, ParamOutOfRange

from conftest import build, random_bpa


def dense_split_oracle(bpa):
    """Reference split: loop over the whole power set, test subset inclusion."""
    frame = bpa.frame
    out = {}
    for fs in enumerate_powerset(frame):
        value = fsum(
            v / (2**g.cardinality - 1) for g, v in bpa.masses.items() if fs.issubset(g)
        )
        if value > 0:
            out[fs] = value
    return out


def hartley(bpa):
    return fsum(v * log2(f.cardinality) for f, v in bpa.masses.items())


def non_singleton_mass(bpa):
    return fsum(v for f, v in bpa.masses.items() if f.cardinality > 1)


class TestBetP:
    def test_vacuous_three_elements(self):
        dist = betp(MassAssignment.vacuous(Frame(("a", "b", "c"))))
        assert dist.probs == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-15)

    def test_running_example(self, eppf):
        assert betp(eppf).probs == pytest.approx((0.4, 0.6), abs=1e-12)

    def test_bayesian_identity(self):
        bpa = build("abc", {"a": 0.5, "b": 0.2, "c": 0.3})
        assert betp(bpa).by_label() == pytest.approx({"a": 0.5, "b": 0.2, "c": 0.3})


class TestPnPl:
    def test_running_example(self, eppf):
        dist = pnpl(eppf)
        assert abs(dist.probs[0] - 3 / 7) <= 1e-12
        assert abs(dist.probs[1] - 4 / 7) <= 1e-12

    def test_bayesian_identity(self):
        bpa = build("ab", {"a": 0.25, "b": 0.75})
        assert pnpl(bpa).probs == pytest.approx((0.25, 0.75), abs=1e-12)

    def test_vacuous_four_elements(self):
        dist = pnpl(MassAssignment.vacuous(Frame(("a", "b", "c", "d"))))
        assert dist.probs == pytest.approx((0.25,) * 4, abs=1e-15)

    def test_agrees_with_betp_on_bayesian(self):
        rng = random.Random(5)
        for _ in range(25):
            n = rng.randint(1, 6)
            raw = [rng.random() + 0.01 for _ in range(n)]
            total = fsum(raw)
            bpa = MassAssignment(
                Frame(tuple(f"e{i}" for i in range(n))),
                {1 << i: v / total for i, v in enumerate(raw)},
            )
            assert pnpl(bpa).probs == pytest.approx(betp(bpa).probs, abs=1e-12)


class TestUniformSplit:
    def test_pair_splits_into_thirds(self):
        out = uniform_split_step(build("ab", {"a|b": 1.0}))
        assert out.by_label() == pytest.approx({"a": 1 / 3, "b": 1 / 3, "a|b": 1 / 3})

    def test_bayesian_fixed_point(self):
        bpa = build("abc", {"a": 0.1, "b": 0.2, "c": 0.7})
        assert uniform_split_step(bpa) == bpa

    def test_running_pair_example(self, eee_x):
        out = uniform_split_step(eee_x)
        assert out.by_label() == pytest.approx(
            {"x1": 0.4, "x2": 0.4, "x1|x2": 0.2}, abs=1e-12
        )

    def test_matches_dense_oracle(self):
        rng = random.Random(13)
        for _ in range(30):
            bpa = random_bpa(rng, rng.randint(1, 7))
            split = uniform_split_step(bpa)
            oracle = dense_split_oracle(bpa)
            assert set(split.masses) == set(oracle)
            for fs, v in oracle.items():
                assert split.mass(fs) == pytest.approx(v, abs=1e-12)

    def test_guard(self):
        with pytest.raises(FrameTooLarge):
            uniform_split_step(MassAssignment.vacuous(Frame(tuple(f"e{i}" for i in range(25)))))

    def test_betp_invariance(self):
        rng = random.Random(17)
        for _ in range(40):
            bpa = random_bpa(rng, rng.randint(2, 8))
            before = betp(bpa).probs
            after = betp(uniform_split_step(bpa)).probs
            assert max(abs(a - b) for a, b in zip(before, after)) <= 1e-12


class TestParametrizedSplit:
    def test_p3_matches_uniform_on_vacuous(self):
        bpa = MassAssignment.vacuous(Frame(("a", "b", "c")))
        out = parametrized_split_step_3(bpa, 3.0)
        assert all(v == pytest.approx(1 / 7, abs=1e-12) for v in out.masses.values())
        uniform = uniform_split_step(bpa)
        assert out.by_label() == pytest.approx(uniform.by_label(), abs=1e-15)

    def test_bayesian_fixed_point(self):
        bpa = build("abc", {"a": 0.2, "b": 0.3, "c": 0.5})
        for p in (3.0, 5.0, 11.0):
            assert parametrized_split_step_3(bpa, p) == bpa

    def test_mass_conserved(self):
        rng = random.Random(19)
        for _ in range(20):
            bpa = random_bpa(rng, 3)
            out = parametrized_split_step_3(bpa, 3 + 10 * rng.random())
            assert abs(fsum(out.masses.values()) - 1.0) <= 1e-12

    def test_errors(self):
        with pytest.raises(NotThreeElementFrame):
            parametrized_split_step_3(build("ab", {"a|b": 1.0}), 3.0)
        with pytest.raises(ParamOutOfRange):
            parametrized_split_step_3(MassAssignment.vacuous(Frame(("a", "b", "c"))), 2.9)


class TestIterateSplit:
    def test_pair_reaches_half_half(self):
        trace = iterate_split(build("ab", {"a|b": 1.0}), "uniform", tol=1e-9)
        assert trace.converged
        assert trace.final.by_label()["a"] == pytest.approx(0.5, abs=1e-9)
        assert trace.final.by_label()["b"] == pytest.approx(0.5, abs=1e-9)

    def test_param3_reaches_thirds_hartley_monotone(self):
        bpa = MassAssignment.vacuous(Frame(("a", "b", "c")))
        trace = iterate_split(bpa, "param3", p=5.0, tol=1e-9)
        assert trace.converged
        for s in trace.final.frame.singletons():
            assert trace.final.mass(s) == pytest.approx(1 / 3, abs=1e-8)
        values = [step.metrics["hartley"] for step in trace.steps]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-8

    def test_limit_is_pignistic_transform(self, eppf):
        trace = iterate_split(eppf, "uniform", tol=1e-12)
        target = betp(eppf).probs
        finals = [trace.final.mass(s) for s in eppf.frame.singletons()]
        assert finals == pytest.approx(target, abs=1e-9)

    def test_geometric_convergence(self):
        # The one-step retention factor for non-singleton mass is
        # (2^c - 1 - c)/(2^c - 1) for a c-element set: 1/3 for pairs,
        # 4/7 for triples, (2^n - 1 - n)/(2^n - 1) in general.
        rng = random.Random(37)
        for _ in range(15):
            n = rng.randint(2, 6)
            bpa = random_bpa(rng, n)
            ratio = (2**n - 1 - n) / (2**n - 1)
            bound = non_singleton_mass(bpa)
            current = bpa
            for _ in range(6):
                current = uniform_split_step(current)
                bound *= ratio
                assert non_singleton_mass(current) <= bound + 1e-12

    def test_step_zero_is_input(self, eppf):
        trace = iterate_split(eppf, "uniform", max_steps=3, tol=0.0)
        assert trace.steps[0].bpa == eppf
        assert [s.index for s in trace.steps] == [0, 1, 2, 3]
        assert not trace.converged

    def test_unknown_kernel(self, eppf):
        with pytest.raises(ParamOutOfRange):
            iterate_split(eppf, "cubic")
        with pytest.raises(ParamOutOfRange):
            iterate_split(eppf, "param3")  # p is required


class TestPtmFusion:
    def test_running_example_converges_to_pnpl(self, eppf):
        trace = ptm_fusion_process(eppf, max_steps=100, tol=1e-9)
        assert trace.converged
        finals = [trace.final.mass(s) for s in eppf.frame.singletons()]
        assert abs(finals[0] - 3 / 7) <= 1e-6
        assert abs(finals[1] - 4 / 7) <= 1e-6

    def test_symmetric_bayesian_fixed_point(self):
        bpa = build("ab", {"a": 0.5, "b": 0.5})
        trace = ptm_fusion_process(bpa, tol=1e-12)
        assert trace.final.by_label()["a"] == pytest.approx(0.5, abs=1e-9)

    def test_vacuous_two_elements(self):
        trace = ptm_fusion_process(build("ab", {"a|b": 1.0}), tol=1e-10)
        finals = [trace.final.mass(s) for s in trace.final.frame.singletons()]
        assert finals == pytest.approx([0.5, 0.5], abs=1e-8)

    def test_uniform_partner_definition(self):
        partner = uniform_bpa(Frame(("a", "b")))
        assert partner.by_label() == pytest.approx(
            {"a": 1 / 3, "b": 1 / 3, "a|b": 1 / 3}, abs=1e-15
        )


class TestNegation:
    def test_reference_sequence_first_steps(self):
        bpa = build(["x1", "x2"], {"x1": 0.6, "x2": 0.1, "x1|x2": 0.3})
        once = negation_step(bpa)
        assert once.by_label() == pytest.approx(
            {"x1": 0.05, "x2": 0.30, "x1|x2": 0.65}, abs=1e-12
        )
        twice = negation_step(once)
        assert twice.by_label() == pytest.approx(
            {"x1": 0.15, "x2": 0.025, "x1|x2": 0.825}, abs=1e-12
        )

    def test_full_reference_table(self):
        from fbelief.experiments import NEGATION_REFERENCE

        bpa = build(["x1", "x2"], {"x1": 0.6, "x2": 0.1, "x1|x2": 0.3})
        sets = [bpa.frame.parse_set(k) for k in ("x1", "x2", "x1|x2")]
        for row in NEGATION_REFERENCE:
            for fs, printed in zip(sets, row):
                assert abs(bpa.mass(fs) - printed) <= 5e-5
            bpa = negation_step(bpa)

    def test_vacuous_fixed_point(self):
        bpa = MassAssignment.vacuous(Frame(("a", "b", "c")))
        assert negation_step(bpa) == bpa

    def test_normalization_and_ignorance_growth(self):
        rng = random.Random(41)
        for _ in range(30):
            bpa = random_bpa(rng, rng.randint(1, 6))
            negated = negation_step(bpa)
            assert abs(fsum(negated.masses.values()) - 1.0) <= 1e-12
            assert negated.mass(bpa.frame.full_set) >= bpa.mass(bpa.frame.full_set) - 1e-15


class TestTraceCsv:
    def test_layout(self, eppf):
        trace = iterate_split(eppf, "uniform", max_steps=2, tol=0.0, metrics=("hartley", "fb"))
        out = io.StringIO()
        write_trace_csv(trace, out)
        lines = out.getvalue().splitlines()
        assert lines[0] == "step,a,b,a|b,hartley,fb"
        assert len(lines) == 4  # header + steps 0..2
        first = lines[1].split(",")
        assert first[0] == "0"
        assert [float(x) for x in first[1:4]] == [0.2, 0.4, 0.4]

    def test_missing_masses_written_as_zero(self):
        trace = iterate_split(build("ab", {"a": 1.0}), "uniform", metrics=())
        out = io.StringIO()
        write_trace_csv(trace, out)
        rows = out.getvalue().splitlines()
        assert rows[1].split(",")[2] == "0.0"
