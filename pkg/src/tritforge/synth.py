"""Synthesis of arbitrary ternary functions into the general three-network form.

Any n-input ternary function splits into three pull networks, one per
output level (ground, Vbb, Vdd).  Each network is a sum of products over
per-variable one-hot decode indicators; each product becomes a series
chain of transmission gates from the level's rail to the output, and the
products of one network sit in parallel.  The three activation conditions
partition the input space, so the output is always driven exactly once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cells import CellKind
from .cost import transistor_count  # noqa: F401  (re-exported: counting lives here too)
from .netlist import Netlist
from .trits import as_trit, sti, txor

Literal = tuple[int, int]  # (variable index, level)
Term = frozenset[Literal]


class TruthTableError(ValueError):
    """Malformed truth table (wrong size, bad entries, bad text format)."""


@dataclass(frozen=True)
class TernaryTruthTable:
    """Dense single-output table over all 3**arity input assignments.

    Entries are indexed by input tuples in lexicographic order with the
    first variable most significant.
    """

    arity: int
    outputs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise TruthTableError(f"arity must be >= 1, got {self.arity}")
        if len(self.outputs) != 3**self.arity:
            raise TruthTableError(
                f"expected {3 ** self.arity} entries for arity {self.arity},"
                f" got {len(self.outputs)}"
            )
        for v in self.outputs:
            as_trit(v)

    @classmethod
    def from_function(cls, arity: int, fn) -> "TernaryTruthTable":
        outs = tuple(fn(*inp) for inp in itertools.product((0, 1, 2), repeat=arity))
        return cls(arity, outs)

    def index(self, assignment: tuple[int, ...]) -> int:
        idx = 0
        for v in assignment:
            idx = idx * 3 + as_trit(v)
        return idx

    def value(self, assignment: tuple[int, ...]) -> int:
        return self.outputs[self.index(assignment)]

    def assignments(self):
        return itertools.product((0, 1, 2), repeat=self.arity)


@dataclass(frozen=True)
class PullNetwork:
    """One pull network: the terms that connect the output to one rail."""

    level: int
    arity: int
    terms: frozenset[Term]

    def active(self, assignment: tuple[int, ...]) -> bool:
        return any(
            all(assignment[var] == lev for var, lev in term) for term in self.terms
        )

    def literal_count(self) -> int:
        return sum(len(t) for t in self.terms)

    def sorted_terms(self) -> list[list[Literal]]:
        return sorted((sorted(t) for t in self.terms), key=lambda t: (len(t), t))


def minterm_networks(tt: TernaryTruthTable) -> tuple[PullNetwork, PullNetwork, PullNetwork]:
    """Group the table's minterms by output level, one network per level."""
    buckets: dict[int, set[Term]] = {0: set(), 1: set(), 2: set()}
    for assignment in tt.assignments():
        term = frozenset(enumerate(assignment))
        buckets[tt.value(assignment)].add(term)
    return tuple(
        PullNetwork(level, tt.arity, frozenset(buckets[level])) for level in (0, 1, 2)
    )


def _cover(term: Term, arity: int):
    """All assignments consistent with a term's literals."""
    fixed = dict(term)
    ranges = [(fixed[i],) if i in fixed else (0, 1, 2) for i in range(arity)]
    return itertools.product(*ranges)


def simplify_terms(
    networks: tuple[PullNetwork, PullNetwork, PullNetwork],
) -> tuple[PullNetwork, PullNetwork, PullNetwork]:
    """Drop redundant literals and contained terms; activation is unchanged.

    A literal may be dropped when every assignment matching the weakened
    term still maps into the network's own activation set, so each network
    only ever widens within its level.  Term and literal counts never
    increase.
    """
    out = []
    for network in networks:
        allowed = {
            assignment
            for assignment in itertools.product((0, 1, 2), repeat=network.arity)
            if network.active(assignment)
        }
        terms = {t for t in network.terms}
        changed = True
        while changed:
            changed = False
            for term in sorted(terms, key=lambda t: (len(t), sorted(t))):
                for lit in sorted(term):
                    weakened = term - {lit}
                    if all(a in allowed for a in _cover(weakened, network.arity)):
                        terms.discard(term)
                        terms.add(weakened)
                        changed = True
                        break
                if changed:
                    break
        pruned = {
            t
            for t in terms
            if not any(other < t for other in terms)
        }
        out.append(PullNetwork(network.level, network.arity, frozenset(pruned)))
    return tuple(out)


def _emit_decode(nl: Netlist, var: str) -> dict[int, str]:
    """Instantiate the one-hot decode for one input variable.

    Indicators: is0 from the NTI, is2 from the inverted PTI, is1 from the
    AND of the PTI output with the inverted NTI output.
    """
    is0 = nl.add_net(f"{var}_is0")
    p = nl.add_net(f"{var}_p")
    is2 = nl.add_net(f"{var}_is2")
    n0i = nl.add_net(f"{var}_nn")
    is1 = nl.add_net(f"{var}_is1")
    nl.add_instance(f"dec_{var}_nti", CellKind.NTI.value, {"a": var, "y": is0})
    nl.add_instance(f"dec_{var}_pti", CellKind.PTI.value, {"a": var, "y": p})
    nl.add_instance(f"dec_{var}_inv2", CellKind.BIN_INV.value, {"a": p, "y": is2})
    nl.add_instance(f"dec_{var}_inv0", CellKind.BIN_INV.value, {"a": is0, "y": n0i})
    nl.add_instance(f"dec_{var}_and1", CellKind.BIN_AND.value, {"a": p, "b": n0i, "y": is1})
    return {0: is0, 1: is1, 2: is2}


def _emit_networks(
    nl: Netlist,
    out_name: str,
    networks: tuple[PullNetwork, PullNetwork, PullNetwork],
    indicators: dict[int, dict[int, str]],
) -> None:
    for network in networks:
        rail = nl.const(network.level)
        for ti, term in enumerate(network.sorted_terms()):
            prefix = f"{out_name}_n{network.level}_t{ti}"
            prev = rail
            if not term:
                # Constant-level term: an always-on switch to the rail.
                nl.add_instance(
                    f"{prefix}_on", CellKind.TGATE.value,
                    {"a": prev, "en": nl.const(2), "y": out_name},
                )
                continue
            for li, (var, lev) in enumerate(term):
                last = li == len(term) - 1
                nxt = out_name if last else nl.add_net(f"{prefix}_m{li}")
                nl.add_instance(
                    f"{prefix}_sw{li}", CellKind.TGATE.value,
                    {"a": prev, "en": indicators[var][lev], "y": nxt},
                )
                prev = nxt


def build_networks_netlist(
    outputs: dict[str, tuple[PullNetwork, PullNetwork, PullNetwork]],
    var_names: tuple[str, ...],
    name: str,
) -> Netlist:
    """Assemble decode plus pull networks into a netlist, sharing decoders
    across the output functions."""
    nl = Netlist(name)
    for var in var_names:
        nl.add_net(var)
    for out_name in outputs:
        nl.add_net(out_name)
    referenced = sorted(
        {var for nets in outputs.values() for n in nets for t in n.terms for var, _ in t}
    )
    indicators = {vi: _emit_decode(nl, var_names[vi]) for vi in referenced}
    for out_name, networks in outputs.items():
        _emit_networks(nl, out_name, networks, indicators)
    nl.set_ports(list(var_names), list(outputs))
    return nl


def synthesize(
    tt: TernaryTruthTable,
    var_names: tuple[str, ...] | None = None,
    out_name: str = "y",
    name: str = "synth",
) -> tuple[Netlist, tuple[PullNetwork, PullNetwork, PullNetwork]]:
    """Lower a truth table to the three-network structural form.

    Returns the netlist together with the raw minterm networks; pass the
    networks through :func:`simplify_terms` and rebuild with
    :func:`build_networks_netlist` for the merged variant.
    """
    if var_names is None:
        var_names = tuple(f"x{i}" for i in range(tt.arity))
    if len(var_names) != tt.arity:
        raise TruthTableError(
            f"{len(var_names)} variable names for arity {tt.arity}"
        )
    networks = minterm_networks(tt)
    nl = build_networks_netlist({out_name: networks}, var_names, name)
    return nl, networks


def sti_general_structure() -> Netlist:
    """Reference expansion of the standard ternary inverter."""
    tt = TernaryTruthTable.from_function(1, sti)
    networks = simplify_terms(minterm_networks(tt))
    return build_networks_netlist({"y": networks}, ("a",), "sti_std_ref")


def tha_std_structure() -> Netlist:
    """Standard half adder: shared decode, merged carry and sum networks."""
    carry = TernaryTruthTable.from_function(2, lambda x, y: 1 if x + y >= 3 else 0)
    total = TernaryTruthTable.from_function(2, txor)
    return build_networks_netlist(
        {
            "c": simplify_terms(minterm_networks(carry)),
            "s": simplify_terms(minterm_networks(total)),
        },
        ("x", "y"),
        "tha_std",
    )


# -- truth table text format ---------------------------------------------

def parse_table_text(text: str) -> TernaryTruthTable:
    """Parse the CLI table format: `arity n` header, then `<digits> <output>`
    lines covering all 3**n assignments (any order, no duplicates)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("arity"):
        raise TruthTableError("first line must be 'arity <n>'")
    try:
        arity = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise TruthTableError(f"bad arity header {lines[0]!r}") from exc
    if arity < 1:
        raise TruthTableError(f"arity must be >= 1, got {arity}")
    entries: dict[int, int] = {}
    want = 3**arity
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise TruthTableError(f"bad table row {ln!r}")
        digits, out = parts
        if len(digits) != arity or any(ch not in "012" for ch in digits):
            raise TruthTableError(f"bad input digits {digits!r} for arity {arity}")
        if out not in "012" or len(out) != 1:
            raise TruthTableError(f"bad output {out!r} in row {ln!r}")
        idx = int(digits, 3)
        if idx in entries:
            raise TruthTableError(f"duplicate row for input {digits!r}")
        entries[idx] = int(out)
    if len(entries) != want:
        raise TruthTableError(f"expected {want} rows, got {len(entries)}")
    return TernaryTruthTable(arity, tuple(entries[i] for i in range(want)))


def format_table_text(tt: TernaryTruthTable) -> str:
    lines = [f"arity {tt.arity}"]
    for assignment in tt.assignments():
        digits = "".join(str(v) for v in assignment)
        lines.append(f"{digits} {tt.value(assignment)}")
    return "\n".join(lines) + "\n"
