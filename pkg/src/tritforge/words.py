"""M-digit ternary words: comparison, ripple addition, complements, subtraction.

Digits are stored least-significant first; text I/O is most-significant
first (optionally with a ``t`` suffix, e.g. ``21t`` for decimal 7).  The
word operations mirror the digit-level circuits: comparison folds the
per-digit comparator cascade from the most significant digit down, and
addition ripples through two half adders per digit with a max-merge of the
two sub-carries (which can never both be 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .trits import as_trit, sti, tmax, txor

MAX_WIDTH = 32


class WordError(ValueError):
    """Bad width, digit, or literal for a ternary word."""


class Ordering(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@dataclass(frozen=True)
class TernaryWord:
    """Immutable M-digit ternary number, digits[0] least significant."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.digits) <= MAX_WIDTH:
            raise WordError(
                f"width must be in 1..{MAX_WIDTH}, got {len(self.digits)}"
            )
        for d in self.digits:
            try:
                as_trit(d)
            except Exception:
                raise WordError(f"bad digit {d!r} in {self.digits}") from None

    @property
    def width(self) -> int:
        return len(self.digits)

    @classmethod
    def from_int(cls, value: int, width: int) -> "TernaryWord":
        if value < 0 or value >= 3**width:
            raise WordError(f"{value} does not fit in {width} trits")
        digits = []
        for _ in range(width):
            digits.append(value % 3)
            value //= 3
        return cls(tuple(digits))

    @classmethod
    def parse(cls, text: str, width: int | None = None) -> "TernaryWord":
        """Parse an MSB-first base-3 literal, optionally 't'-suffixed."""
        s = text.strip().removesuffix("t")
        if not s or any(ch not in "012" for ch in s):
            raise WordError(f"bad ternary literal {text!r}")
        if width is not None:
            if len(s) > width:
                raise WordError(f"literal {text!r} wider than {width} digits")
            s = s.rjust(width, "0")
        return cls(tuple(int(ch) for ch in reversed(s)))

    def to_int(self) -> int:
        total = 0
        for d in reversed(self.digits):
            total = total * 3 + d
        return total

    def __str__(self) -> str:
        return "".join(str(d) for d in reversed(self.digits))

    def __int__(self) -> int:
        return self.to_int()


def _check_widths(x: TernaryWord, y: TernaryWord) -> None:
    if x.width != y.width:
        raise WordError(f"width mismatch: {x.width} vs {y.width}")


def word_compare(x: TernaryWord, y: TernaryWord) -> Ordering:
    """Digit comparator cascade, most significant digit first.

    Folds (x_i > y_i) or ((x_i == y_i) and lower-digit result), where each
    digit test comes from the two >=-comparators and their binary AND, and
    agrees with integer comparison of the word values.
    """
    _check_widths(x, y)
    gt = False
    lt = False
    for xd, yd in zip(reversed(x.digits), reversed(y.digits)):
        ge = xd >= yd
        le = yd >= xd
        if gt or lt:
            continue
        if ge and not le:
            gt = True
        elif le and not ge:
            lt = True
    if gt:
        return Ordering.GT
    if lt:
        return Ordering.LT
    return Ordering.EQ


def _tha(x: int, y: int) -> tuple[int, int]:
    """Half-adder digit rule: (carry, sum) with carry in {0, 1}."""
    return (1 if x + y >= 3 else 0, txor(x, y))


def _ripple(x: TernaryWord, y: TernaryWord, carry_in: int) -> tuple[TernaryWord, int]:
    digits = []
    carry = carry_in
    for xd, yd in zip(x.digits, y.digits):
        c1, s1 = _tha(xd, yd)
        c2, s2 = _tha(s1, carry)
        digits.append(s2)
        assert not (c1 == 1 and c2 == 1), "both digit carries high"
        carry = tmax(c1, c2)
    return TernaryWord(tuple(digits)), carry


def word_add(x: TernaryWord, y: TernaryWord) -> tuple[TernaryWord, int]:
    """Ripple addition; returns (sum, carry_out) with carry_out in {0, 1}."""
    _check_widths(x, y)
    return _ripple(x, y, 0)


def twos_complement(x: TernaryWord) -> TernaryWord:
    """Diminished-radix complement: every digit inverted (2 - d)."""
    return TernaryWord(tuple(sti(d) for d in x.digits))


def threes_complement(x: TernaryWord) -> TernaryWord:
    """Radix complement: inverted digits plus one, overflow discarded."""
    word, _ = _ripple(twos_complement(x), TernaryWord.from_int(0, x.width), 1)
    return word


def word_sub(x: TernaryWord, y: TernaryWord) -> tuple[TernaryWord, int]:
    """Complement-based subtraction: x plus the radix complement of y.

    The increment rides as the carry into the ripple, so the carry out of
    the addition is exactly the no-borrow flag: 1 iff x >= y.  The result
    is (x - y) mod 3**M.
    """
    _check_widths(x, y)
    return _ripple(x, twos_complement(y), 1)
