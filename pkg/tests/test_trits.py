"""Scalar trit operations against their published truth tables."""

import itertools

import pytest

from tritforge.trits import (
    TritError,
    TritPair,
    band,
    bnot,
    bor,
    decode_indicators,
    decompose,
    nti,
    pti,
    reconstruct,
    sti,
    tmax,
    tmin,
    txor,
)

TRITS = (0, 1, 2)

# Inverter truth table: x -> (nti, sti, pti)
INVERTER_ROWS = {
    0: (2, 2, 2),
    1: (0, 1, 2),
    2: (0, 0, 0),
}

# Mod-3 XOR truth table, all nine rows.
XOR_ROWS = {
    (0, 0): 0, (0, 1): 1, (0, 2): 2,
    (1, 0): 1, (1, 1): 2, (1, 2): 0,
    (2, 0): 2, (2, 1): 0, (2, 2): 1,
}


@pytest.mark.parametrize("x,row", INVERTER_ROWS.items())
def test_inverter_table(x, row):
    assert (nti(x), sti(x), pti(x)) == row


@pytest.mark.parametrize("xy,s", XOR_ROWS.items())
def test_xor_table(xy, s):
    assert txor(*xy) == s


def test_min_max_examples():
    assert tmin(1, 2) == 1
    assert tmin(0, 2) == 0
    assert tmin(2, 2) == 2
    assert tmax(1, 2) == 2
    assert tmax(0, 1) == 1
    assert tmax(0, 0) == 0


def test_sti_involution():
    for x in TRITS:
        assert sti(sti(x)) == x


def test_inverters_ordered():
    for x in TRITS:
        assert nti(x) <= sti(x) <= pti(x)


def test_min_max_algebra():
    for x, y in itertools.product(TRITS, repeat=2):
        assert tmin(x, y) == tmin(y, x)
        assert tmax(x, y) == tmax(y, x)
        assert tmax(x, tmin(x, y)) == x
        assert tmin(x, tmax(x, y)) == x
    for x, y, z in itertools.product(TRITS, repeat=3):
        assert tmin(tmin(x, y), z) == tmin(x, tmin(y, z))
        assert tmax(tmax(x, y), z) == tmax(x, tmax(y, z))


def test_xor_properties():
    for x, y in itertools.product(TRITS, repeat=2):
        assert txor(x, y) == txor(y, x)
    for x in TRITS:
        assert txor(x, 0) == x


def test_decompose_cases():
    assert decompose(0) == (0, 0)
    assert decompose(1) == (2, 0)
    assert decompose(2) == (2, 2)
    for x in TRITS:
        assert reconstruct(decompose(x)) == x


def test_tritpair_validation():
    with pytest.raises(TritError):
        TritPair(0, 2).validate()  # a2 > a1
    with pytest.raises(TritError):
        TritPair(1, 0).validate()  # components must be 0 or 2
    with pytest.raises(TritError):
        reconstruct(TritPair(0, 2))


def test_decode_indicators_one_hot():
    expected = {0: (2, 0, 0), 1: (0, 2, 0), 2: (0, 0, 2)}
    for x in TRITS:
        ind = decode_indicators(x)
        assert ind == expected[x]
        assert ind.count(2) == 1 and ind.count(0) == 2


def test_binary_helpers():
    assert band(2, 2) == 2
    assert band(2, 0) == 0
    assert bor(0, 2) == 2
    assert bor(0, 0) == 0
    assert bnot(2) == 0
    assert bnot(0) == 2


@pytest.mark.parametrize("bad", [-1, 3, 42, True, False])
def test_invalid_trits_rejected(bad):
    for fn in (nti, pti, sti, decompose):
        with pytest.raises(TritError):
            fn(bad)
    with pytest.raises(TritError):
        tmin(bad, 0)
    with pytest.raises(TritError):
        txor(0, bad)
