"""tritforge: ternary threshold-logic circuits.

Model, simulate, synthesize, and cost ternary (3-valued) logic built from
a clocked ternary threshold logic gate and standard CMOS-style ternary
cells, with exhaustive behavioral verification of every cell and circuit.
"""

from .netlist import Netlist
from .tlg import ClockEdge, TlgCell, TlgWeights, tlg_eval, tlg_eval_decomposed
from .trits import (
    TritError,
    TritPair,
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
from .words import Ordering, TernaryWord, word_add, word_compare, word_sub

__version__ = "0.1.0"

__all__ = [
    "ClockEdge",
    "Netlist",
    "Ordering",
    "TernaryWord",
    "TlgCell",
    "TlgWeights",
    "TritError",
    "TritPair",
    "decode_indicators",
    "decompose",
    "nti",
    "pti",
    "reconstruct",
    "sti",
    "tlg_eval",
    "tlg_eval_decomposed",
    "tmax",
    "tmin",
    "txor",
    "word_add",
    "word_compare",
    "word_sub",
    "__version__",
]
