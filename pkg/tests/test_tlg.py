"""Threshold gate evaluation: direct form, decomposed form, clocked state."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tritforge.tlg import (
    ClockEdge,
    TlgCell,
    TlgWeightError,
    TlgWeights,
    tlg_eval,
    tlg_eval_decomposed,
)
from tritforge.trits import decompose

TRITS = (0, 1, 2)


def all_weight_vectors(lo=0, hi=3):
    for ns in itertools.product(range(lo, hi + 1), repeat=4):
        if any(ns):
            yield TlgWeights(*ns)


def test_weight_validation():
    with pytest.raises(TlgWeightError):
        TlgWeights(-1, 0, 0, 1)
    with pytest.raises(TlgWeightError):
        TlgWeights(0, 0, 0, 0)
    with pytest.raises(TlgWeightError):
        TlgWeights(16, 0, 0, 0)  # default cap is 15
    TlgWeights(16, 0, 0, 0, cap=20)
    with pytest.raises(TlgWeightError):
        TlgWeights(1, 0, 0, 1.5)


def test_eval_comparator_cases():
    w = TlgWeights(1, 0, 0, 1)
    # equal operands tie toward the positive side (x >= y)
    assert tlg_eval(w, 1, 0, 0, 1) == (2, 0)
    assert tlg_eval(w, 0, 0, 0, 2) == (0, 2)
    assert tlg_eval(w, 2, 0, 0, 0) == (2, 0)


def test_eval_zero_tie():
    w = TlgWeights(1, 1, 0, 0)
    assert tlg_eval(w, 0, 0, 0, 0) == (2, 0)


def test_eval_decomposed_cases():
    w = TlgWeights(1, 0, 0, 1)
    zero = decompose(0)
    assert tlg_eval_decomposed(w, decompose(1), zero, zero, decompose(2)) == (0, 2)
    assert tlg_eval_decomposed(w, decompose(2), zero, zero, decompose(2)) == (2, 0)
    # 2*1 + 2*2 - 3*2 = 0, resolved positive
    w2 = TlgWeights(2, 2, 3, 0)
    assert tlg_eval_decomposed(
        w2, decompose(1), decompose(2), decompose(2), zero
    ) == (2, 0)


def test_decomposed_equals_direct_exhaustive():
    # Every weight vector with entries 0..3 over all 81 input tuples.
    for w in all_weight_vectors():
        for a, b, c, d in itertools.product(TRITS, repeat=4):
            direct = tlg_eval(w, a, b, c, d)
            split = tlg_eval_decomposed(
                w, decompose(a), decompose(b), decompose(c), decompose(d)
            )
            assert direct == split, (w, a, b, c, d)


def test_obar_complement():
    for w in all_weight_vectors(0, 2):
        for a, b, c, d in itertools.product(TRITS, repeat=4):
            o, obar = tlg_eval(w, a, b, c, d)
            assert obar == 2 - o


@given(
    ns=st.tuples(*[st.integers(0, 3)] * 4).filter(any),
    inputs=st.tuples(*(st.sampled_from(TRITS) for _ in range(4))),
)
def test_monotonicity(ns, inputs):
    w = TlgWeights(*ns)
    a, b, c, d = inputs
    o, _ = tlg_eval(w, a, b, c, d)
    if a < 2:
        assert tlg_eval(w, a + 1, b, c, d)[0] >= o
    if b < 2:
        assert tlg_eval(w, a, b + 1, c, d)[0] >= o
    if c < 2:
        assert tlg_eval(w, a, b, c + 1, d)[0] <= o
    if d < 2:
        assert tlg_eval(w, a, b, c, d + 1)[0] <= o


@given(
    ns=st.tuples(*[st.integers(0, 3)] * 4).filter(any),
    k=st.integers(1, 5),
    inputs=st.tuples(*(st.sampled_from(TRITS) for _ in range(4))),
)
def test_weight_scaling_invariance(ns, k, inputs):
    w = TlgWeights(*ns)
    scaled = TlgWeights(*(n * k for n in ns), cap=15 * k)
    assert tlg_eval(w, *inputs) == tlg_eval(scaled, *inputs)


def test_clock_step_edge_semantics():
    cell = TlgCell(TlgWeights(1, 0, 0, 1))
    assert not cell.evaluated
    # power-on state reads (0, 2) until the first falling edge
    assert cell.clock_step(ClockEdge.RISING, 2, 0, 0, 0) == (0, 2)
    assert not cell.evaluated

    out = cell.clock_step(ClockEdge.FALLING, 2, 0, 0, 0)
    assert out == (2, 0)
    assert cell.evaluated
    # held through the rising edge and with no edge, despite input changes
    assert cell.clock_step(ClockEdge.RISING, 0, 0, 0, 2) == (2, 0)
    assert cell.clock_step(ClockEdge.NONE, 0, 0, 0, 2) == (2, 0)
    # next falling edge captures the new inputs
    assert cell.clock_step(ClockEdge.FALLING, 0, 0, 0, 2) == (0, 2)
    assert cell.state_obar == 2 - cell.state_o
