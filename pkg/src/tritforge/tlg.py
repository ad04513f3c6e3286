"""Ternary threshold logic gate: exact integer evaluation and clocked state.

The gate computes ``o = sgn(n1*a + n2*b + eps - n3*c - n4*d) + 1`` with a
small positive tie-breaking offset, mapped through the binary-as-ternary
convention (true = 2).  Since the weighted sum is an integer, any offset in
(0, 1) only resolves the exact tie toward the positive side, so the offset
never needs to be represented: the gate fires iff the integer sum is >= 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .trits import TritPair, as_trit

#: Default per-coefficient cap; larger fan-in loses comparator noise margin.
DEFAULT_WEIGHT_CAP = 15


class TlgWeightError(ValueError):
    """Raised for weight vectors outside the supported range."""


@dataclass(frozen=True)
class TlgWeights:
    """Coefficients of the two positive (a, b) and two negative (c, d) inputs."""

    n1: int
    n2: int
    n3: int
    n4: int
    cap: int = DEFAULT_WEIGHT_CAP

    def __post_init__(self) -> None:
        ns = (self.n1, self.n2, self.n3, self.n4)
        for n in ns:
            if not isinstance(n, int) or isinstance(n, bool):
                raise TlgWeightError(f"weights must be integers, got {n!r}")
            if n < 0:
                raise TlgWeightError(f"weights must be non-negative, got {n}")
            if n > self.cap:
                raise TlgWeightError(f"weight {n} exceeds cap {self.cap}")
        if not any(ns):
            raise TlgWeightError("at least one weight must be positive")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n1, self.n2, self.n3, self.n4)


def tlg_eval(w: TlgWeights, a: int, b: int, c: int, d: int) -> tuple[int, int]:
    """Evaluate the gate on four trits; returns (o, obar), each in {0, 2}."""
    delta = (
        w.n1 * as_trit(a)
        + w.n2 * as_trit(b)
        - w.n3 * as_trit(c)
        - w.n4 * as_trit(d)
    )
    o = 2 if delta >= 0 else 0
    return o, 2 - o


def tlg_eval_decomposed(
    w: TlgWeights, a: TritPair, b: TritPair, c: TritPair, d: TritPair
) -> tuple[int, int]:
    """Evaluate on decomposed inputs, as the differential circuit does.

    Works on the doubled sum (each trit x contributes x1 + x2 = 2x), which
    keeps the arithmetic integral and gives a result identical to
    :func:`tlg_eval` on the reconstructed trits.
    """
    pairs = [TritPair(*p).validate() for p in (a, b, c, d)]
    doubled = (
        w.n1 * (pairs[0].a1 + pairs[0].a2)
        + w.n2 * (pairs[1].a1 + pairs[1].a2)
        - w.n3 * (pairs[2].a1 + pairs[2].a2)
        - w.n4 * (pairs[3].a1 + pairs[3].a2)
    )
    o = 2 if doubled >= 0 else 0
    return o, 2 - o


class ClockEdge(enum.Enum):
    RISING = "rising"
    FALLING = "falling"
    NONE = "none"


@dataclass
class TlgCell:
    """One clocked TLG instance with its SR-latched output state.

    Before the first falling edge the outputs read (0, 2) and the cell is
    flagged unevaluated; simulators may warn when such an output is consumed.
    """

    weights: TlgWeights
    state_o: int = 0
    evaluated: bool = field(default=False)

    @property
    def state_obar(self) -> int:
        return 2 - self.state_o

    def clock_step(
        self, edge: ClockEdge, a: int, b: int, c: int, d: int
    ) -> tuple[int, int]:
        """Advance one clock event; captures on the falling edge, else holds."""
        if edge is ClockEdge.FALLING:
            self.state_o, _ = tlg_eval(self.weights, a, b, c, d)
            self.evaluated = True
        return self.state_o, self.state_obar
