"""Word-level arithmetic against integer oracles."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tritforge.words import (
    Ordering,
    TernaryWord,
    WordError,
    threes_complement,
    twos_complement,
    word_add,
    word_compare,
    word_sub,
)


def words(width):
    for v in range(3**width):
        yield TernaryWord.from_int(v, width)


def test_parse_and_str():
    w = TernaryWord.parse("21t")
    assert w.to_int() == 7
    assert str(w) == "21"
    assert TernaryWord.parse("02").to_int() == 2
    assert TernaryWord.parse("21", width=4).to_int() == 7
    assert str(TernaryWord.parse("21", width=4)) == "0021"
    assert int(TernaryWord.from_int(25, 3)) == 25


def test_parse_errors():
    with pytest.raises(WordError):
        TernaryWord.parse("3t")
    with pytest.raises(WordError):
        TernaryWord.parse("")
    with pytest.raises(WordError):
        TernaryWord.parse("222", width=2)
    with pytest.raises(WordError):
        TernaryWord.from_int(9, 2)
    with pytest.raises(WordError):
        TernaryWord(())
    with pytest.raises(WordError):
        TernaryWord((0, 3))


def test_compare_examples():
    assert word_compare(TernaryWord.parse("21"), TernaryWord.parse("20")) == Ordering.GT
    w = TernaryWord.parse("12")
    assert word_compare(w, w) == Ordering.EQ
    assert word_compare(TernaryWord.parse("02"), TernaryWord.parse("10")) == Ordering.LT


def test_add_examples():
    s, c = word_add(TernaryWord.parse("12"), TernaryWord.parse("11"))
    assert (str(s), c) == ("00", 1)  # 5 + 4 = 9
    x = TernaryWord.parse("21")
    s, c = word_add(x, TernaryWord.from_int(0, 2))
    assert (s, c) == (x, 0)
    s, c = word_add(TernaryWord.parse("22"), TernaryWord.parse("22"))
    assert (str(s), c) == ("21", 1)  # 8 + 8 = 16 = 9 + 7


def test_complement_examples():
    assert str(twos_complement(TernaryWord.parse("12"))) == "10"
    assert str(twos_complement(TernaryWord.parse("00"))) == "22"
    assert str(twos_complement(TernaryWord.parse("22"))) == "00"
    assert str(threes_complement(TernaryWord.parse("12"))) == "11"  # 9 - 5 = 4
    assert str(threes_complement(TernaryWord.parse("00"))) == "00"
    assert str(threes_complement(TernaryWord.parse("01"))) == "22"  # 9 - 1 = 8


def test_sub_examples():
    d, nb = word_sub(TernaryWord.parse("21"), TernaryWord.parse("12"))
    assert (str(d), nb) == ("02", 1)  # 7 - 5 = 2
    x = TernaryWord.parse("11")
    d, nb = word_sub(x, x)
    assert (d.to_int(), nb) == (0, 1)
    d, nb = word_sub(TernaryWord.parse("01"), TernaryWord.parse("02"))
    assert (str(d), nb) == ("22", 0)  # (1 - 2) mod 9 = 8


def test_width_mismatch():
    with pytest.raises(WordError):
        word_add(TernaryWord.parse("12"), TernaryWord.parse("112"))
    with pytest.raises(WordError):
        word_compare(TernaryWord.parse("1"), TernaryWord.parse("11"))
    with pytest.raises(WordError):
        word_sub(TernaryWord.parse("1"), TernaryWord.parse("11"))


@pytest.mark.parametrize("width", [1, 2, 3])
def test_exhaustive_against_integers(width):
    base = 3**width
    for x, y in itertools.product(words(width), repeat=2):
        xi, yi = x.to_int(), y.to_int()
        expected = Ordering.GT if xi > yi else Ordering.LT if xi < yi else Ordering.EQ
        assert word_compare(x, y) == expected
        s, c = word_add(x, y)
        assert s.to_int() + base * c == xi + yi
        d, nb = word_sub(x, y)
        assert d.to_int() == (xi - yi) % base
        assert nb == (1 if xi >= yi else 0)


@pytest.mark.parametrize("width", [1, 2, 3, 4])
def test_complement_formulas_exhaustive(width):
    base = 3**width
    for x in words(width):
        v = x.to_int()
        assert twos_complement(x).to_int() == base - 1 - v
        assert twos_complement(twos_complement(x)) == x
        assert threes_complement(x).to_int() == (base - v) % base
        # radix-complement involution, stated assertably for all v
        assert (base - (base - v) % base) % base == v


def test_digit_carries_never_both_high():
    # each ripple digit merges the carries of two half adders; they can
    # never both be 1, which justifies the max-merge
    for x, y, cin in itertools.product((0, 1, 2), (0, 1, 2), (0, 1)):
        c1 = 1 if x + y >= 3 else 0
        s1 = (x + y) % 3
        c2 = 1 if s1 + cin >= 3 else 0
        assert not (c1 == 1 and c2 == 1)


word_pairs = st.integers(2, 8).flatmap(
    lambda w: st.tuples(
        st.just(w),
        st.integers(0, 3**w - 1),
        st.integers(0, 3**w - 1),
    )
)


@given(word_pairs)
def test_random_word_identities(params):
    width, xi, yi = params
    x = TernaryWord.from_int(xi, width)
    y = TernaryWord.from_int(yi, width)
    s, c = word_add(x, y)
    assert s.to_int() + 3**width * c == xi + yi
    d, nb = word_sub(x, y)
    assert d.to_int() == (xi - yi) % 3**width
    assert nb == (1 if xi >= yi else 0)
    cmp_result = word_compare(x, y)
    assert cmp_result == (
        Ordering.GT if xi > yi else Ordering.LT if xi < yi else Ordering.EQ
    )
