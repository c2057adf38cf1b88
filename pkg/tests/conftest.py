import random

import pytest

from fbelief import Frame, MassAssignment


def build(labels, masses):
    """Shorthand: build a MassAssignment from label-keyed masses."""
    return MassAssignment.from_labels(Frame(tuple(labels)), masses)


@pytest.fixture
def eppf():
    """Two-element running example: m(a)=0.2, m(b)=0.4, m(ab)=0.4."""
    return build("ab", {"a": 0.2, "b": 0.4, "a|b": 0.4})


@pytest.fixture
def eee_x():
    return build(["x1", "x2"], {"x1": 0.2, "x2": 0.2, "x1|x2": 0.6})


@pytest.fixture
def eee_y():
    return build(["y1", "y2"], {"y1": 0.1, "y2": 0.6, "y1|y2": 0.3})


@pytest.fixture
def table4_cycle():
    """Four-element frame, the four cycle pairs at 1/4 each."""
    return build("abcd", {"a|b": 0.25, "b|c": 0.25, "c|d": 0.25, "a|d": 0.25})


@pytest.fixture
def table4_all_pairs():
    """Four-element frame, all six pairs at 1/6 each."""
    return build("abcd", {k: 1 / 6 for k in ("a|b", "a|c", "a|d", "b|c", "b|d", "c|d")})


def random_bpa(rng: random.Random, n: int, max_focal: int = 12) -> MassAssignment:
    """A random BPA on an n-element frame with at most max_focal focal sets."""
    frame = Frame(tuple(f"e{i}" for i in range(n)))
    count = rng.randint(1, min(max_focal, (1 << n) - 1))
    masks = rng.sample(range(1, 1 << n), count)
    raw = [rng.random() + 1e-6 for _ in masks]
    total = sum(raw)
    return MassAssignment(frame, {m: v / total for m, v in zip(masks, raw)})
