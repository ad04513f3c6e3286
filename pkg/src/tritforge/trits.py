"""Scalar ternary value domain and the unary/binary trit operations.

A trit is a plain int restricted to {0, 1, 2}.  Signals restricted to
{0, 2} ("binary-as-ternary") use the same representation; level 2 is
logical true.  All operations here are total over valid trits and raise
:class:`TritError` on anything else.
"""

from __future__ import annotations

from typing import NamedTuple

TRITS = (0, 1, 2)

#: True level of a binary-as-ternary signal.
HI = 2
LO = 0


class TritError(ValueError):
    """Raised when a value outside {0, 1, 2} is used as a trit."""


def as_trit(value: int) -> int:
    """Validate *value* as a trit and return it."""
    if value is True or value is False or value not in (0, 1, 2):
        raise TritError(f"not a trit: {value!r} (expected 0, 1, or 2)")
    return value


def is_hi(x: int) -> bool:
    """Truthiness of a binary-as-ternary signal: only level 2 is true."""
    return as_trit(x) == HI


class TritPair(NamedTuple):
    """Binary decomposition (a1, a2) of a trit, each component in {0, 2}.

    a1 is high iff the source trit is >= 1, a2 is high iff it is 2, so
    a1 >= a2 and (a1 + a2) / 2 reconstructs the source trit.
    """

    a1: int
    a2: int

    def validate(self) -> "TritPair":
        if self.a1 not in (0, 2) or self.a2 not in (0, 2):
            raise TritError(f"decomposed components must be 0 or 2: {self}")
        if self.a2 > self.a1:
            raise TritError(f"invalid decomposition (a2 > a1): {self}")
        return self


def decompose(x: int) -> TritPair:
    """Split a trit into its two binary-as-ternary components."""
    as_trit(x)
    return TritPair(2 if x >= 1 else 0, 2 if x == 2 else 0)


def reconstruct(pair: TritPair) -> int:
    """Inverse of :func:`decompose`: (a1 + a2) / 2."""
    TritPair(*pair).validate()
    return (pair.a1 + pair.a2) // 2


def nti(x: int) -> int:
    """Negative ternary inverter: high only for input 0."""
    return 2 if as_trit(x) == 0 else 0


def pti(x: int) -> int:
    """Positive ternary inverter: high for any input below 2."""
    return 2 if as_trit(x) != 2 else 0


def sti(x: int) -> int:
    """Standard ternary inverter: 2 - x."""
    return 2 - as_trit(x)


def tmin(x: int, y: int) -> int:
    """Ternary AND (min of the two trits)."""
    return min(as_trit(x), as_trit(y))


def tmax(x: int, y: int) -> int:
    """Ternary OR (max of the two trits)."""
    return max(as_trit(x), as_trit(y))


def txor(x: int, y: int) -> int:
    """Ternary XOR: mod-3 sum, carry discarded."""
    return (as_trit(x) + as_trit(y)) % 3


def band(x: int, y: int) -> int:
    """Binary AND over binary-as-ternary signals (high iff both high)."""
    return 2 if as_trit(x) == 2 and as_trit(y) == 2 else 0


def bor(x: int, y: int) -> int:
    """Binary OR over binary-as-ternary signals."""
    return 2 if as_trit(x) == 2 or as_trit(y) == 2 else 0


def bnot(x: int) -> int:
    """Binary NOT over binary-as-ternary signals."""
    return 0 if as_trit(x) == 2 else 2


def decode_indicators(x: int) -> tuple[int, int, int]:
    """One-hot (is0, is1, is2) decode of a trit.

    is0 tracks the NTI output, is2 the STI of the PTI output, and is1 the
    binary AND of the PTI output with the inverted NTI output; exactly one
    of the three is high for any input.
    """
    as_trit(x)
    i0 = nti(x)
    i2 = sti(pti(x))
    i1 = band(pti(x), sti(nti(x)))
    return (i0, i1, i2)
