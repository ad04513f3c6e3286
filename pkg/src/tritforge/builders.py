"""Catalog circuits: single cells and word-level compositions, both variants.

Every entry builds a self-contained netlist with stable port names and
supplies the behavioral oracle the verify engine checks it against.  The
TLG variants are clocked; the STD variants use the general synthesized
structure (inlined where no library kind exists) and settle combinationally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cells import CellKind, merge_carries
from .netlist import Netlist
from .synth import TernaryTruthTable, minterm_networks, build_networks_netlist, simplify_terms
from .trits import sti, tmax, tmin, txor
from .words import MAX_WIDTH


class CatalogError(ValueError):
    """Unknown circuit, variant, or width."""


def inline(nl: Netlist, fragment: Netlist, prefix: str, bindings: dict[str, str]) -> None:
    """Copy a fragment's cells into *nl*, renaming internal nets.

    ``bindings`` maps the fragment's port nets to nets of *nl*; everything
    else is prefixed.  Constant rails merge into the target's rails.
    """
    net_map: dict[str, str] = {}
    for net in fragment.nets.values():
        if net.id in bindings:
            net_map[net.id] = bindings[net.id]
        elif net.kind.startswith("const"):
            net_map[net.id] = nl.const(int(net.kind[-1]))
        elif net.kind == "clock":
            net_map[net.id] = nl.clock(net.id)
        else:
            net_map[net.id] = nl.add_net(f"{prefix}{net.id}")
    for inst in fragment.instances:
        nl.add_instance(
            f"{prefix}{inst.id}",
            inst.kind,
            {p: net_map[n] for p, n in inst.conns.items()},
            inst.params,
        )


# -- synthesized standard (CMOS-style) fragments --------------------------

def _std_fragment(tables: dict[str, Callable], arity: int, name: str) -> Netlist:
    nets = {
        out: simplify_terms(minterm_networks(TernaryTruthTable.from_function(arity, fn)))
        for out, fn in tables.items()
    }
    var_names = ("x",) if arity == 1 else ("x", "y")
    return build_networks_netlist(nets, var_names, name)


def _comp1_std_fragment() -> Netlist:
    return _std_fragment(
        {
            "o": lambda x, y: 2 if x >= y else 0,
            "obar": lambda x, y: 0 if x >= y else 2,
        },
        2,
        "comp1_std",
    )


# -- single-cell builds ----------------------------------------------------

def _cell_build(kind: CellKind, name: str, ins: list[str], outs: list[str],
                clocked: bool) -> Netlist:
    nl = Netlist(name)
    conns = {}
    for n in ins:
        nl.add_net(n)
        conns[n] = n
    for n in outs:
        nl.add_net(n)
        conns[n] = n
    if clocked:
        conns["clk"] = nl.clock("clk")
    nl.add_instance("u0", kind.value, conns)
    nl.set_ports(ins, outs)
    return nl


def _build_sti(width: int, variant: str) -> Netlist:
    if variant == "TLG":
        return _cell_build(CellKind.STI_TLG, "sti_tlg", ["x"], ["y"], True)
    return _std_fragment({"y": sti}, 1, "sti_std")


def _build_and(width: int, variant: str) -> Netlist:
    if variant == "TLG":
        return _cell_build(CellKind.AND_TLG, "and_tlg", ["x", "y"], ["o"], True)
    return _std_fragment({"o": tmin}, 2, "and_std")


def _build_or(width: int, variant: str) -> Netlist:
    if variant == "TLG":
        return _cell_build(CellKind.OR_TLG, "or_tlg", ["x", "y"], ["o"], True)
    return _std_fragment({"o": tmax}, 2, "or_std")


def _build_xor(width: int, variant: str) -> Netlist:
    if variant == "TLG":
        return _cell_build(CellKind.XOR_TLG, "xor_tlg", ["x", "y"], ["s"], True)
    return _std_fragment({"s": txor}, 2, "xor_std")


def _build_comp1(width: int, variant: str) -> Netlist:
    if variant == "TLG":
        return _cell_build(CellKind.COMP1_TLG, "comp1_tlg", ["x", "y"], ["o", "obar"], True)
    return _comp1_std_fragment()


def _build_tha(width: int, variant: str) -> Netlist:
    if variant == "TLG":
        # Emitted as the visible composition: XOR for the sum trit plus the
        # dedicated carry generator.
        nl = Netlist("tha_tlg")
        for n in ("x", "y", "c", "s"):
            nl.add_net(n)
        clk = nl.clock("clk")
        nl.add_instance("sum", CellKind.XOR_TLG.value,
                        {"x": "x", "y": "y", "clk": clk, "s": "s"})
        nl.add_instance("carry", CellKind.CARRY_TLG.value,
                        {"x": "x", "y": "y", "clk": clk, "c": "c"})
        nl.set_ports(["x", "y"], ["c", "s"])
        return nl
    return _cell_build(CellKind.THA_STD, "tha_std", ["x", "y"], ["c", "s"], False)


def _build_hsub(width: int, variant: str) -> Netlist:
    if variant == "TLG":
        return _cell_build(CellKind.HSUB_TLG, "hsub_tlg", ["x", "y"], ["diff", "borrow"], True)
    # Standard variant: same complement structure over clockless half adders.
    nl = Netlist("hsub_std")
    for n in ("x", "y", "diff", "borrow", "ys", "s1", "c1", "c2", "carry"):
        nl.add_net(n)
    nl.add_instance("comp_y", CellKind.STI_STD.value, {"a": "y", "y": "ys"})
    nl.add_instance("add1", CellKind.THA_STD.value, {"x": "x", "y": "ys", "c": "c1", "s": "s1"})
    nl.add_instance("add2", CellKind.THA_STD.value,
                    {"x": "s1", "y": nl.const(1), "c": "c2", "s": "diff"})
    merge_carries(nl, "m", "c1", "c2", "carry")
    nl.add_net("no_carry")
    nl.add_net("carry_hi")
    nl.add_instance("b_is0", CellKind.NTI.value, {"a": "carry", "y": "no_carry"})
    nl.add_instance("b_inv", CellKind.BIN_INV.value, {"a": "no_carry", "y": "carry_hi"})
    nl.add_instance("b_route1", CellKind.TGATE.value, {"a": nl.const(1), "en": "no_carry", "y": "borrow"})
    nl.add_instance("b_route0", CellKind.TGATE.value, {"a": nl.const(0), "en": "carry_hi", "y": "borrow"})
    nl.set_ports(["x", "y"], ["diff", "borrow"])
    return nl


# -- word-level builds -----------------------------------------------------

def _word_inputs(nl: Netlist, width: int) -> tuple[list[str], list[str]]:
    xs = [nl.add_net(f"x{i}") for i in range(width)]
    ys = [nl.add_net(f"y{i}") for i in range(width)]
    return xs, ys


def build_wordcomp(width: int, variant: str = "TLG") -> Netlist:
    """Digit comparator cascade: gt/eq/lt of two M-digit words.

    Per digit, two >=-comparators feed the equality AND; the cascade folds
    most-significant digit first, exactly the binary-style scheme.
    """
    nl = Netlist(f"wordcomp{width}_{variant.lower()}")
    xs, ys = _word_inputs(nl, width)
    clk = nl.clock("clk") if variant == "TLG" else None
    comp_std = _comp1_std_fragment() if variant == "STD" else None
    ge, le = [], []
    for i in range(width):
        g, gb = nl.add_net(f"ge{i}"), nl.add_net(f"ge{i}_n")
        l, lb = nl.add_net(f"le{i}"), nl.add_net(f"le{i}_n")
        if variant == "TLG":
            nl.add_instance(f"cmp_ge{i}", CellKind.COMP1_TLG.value,
                            {"x": xs[i], "y": ys[i], "clk": clk, "o": g, "obar": gb})
            nl.add_instance(f"cmp_le{i}", CellKind.COMP1_TLG.value,
                            {"x": ys[i], "y": xs[i], "clk": clk, "o": l, "obar": lb})
        else:
            inline(nl, comp_std, f"cmp_ge{i}/",
                   {"x": xs[i], "y": ys[i], "o": g, "obar": gb})
            inline(nl, comp_std, f"cmp_le{i}/",
                   {"x": ys[i], "y": xs[i], "o": l, "obar": lb})
        ge.append(g)
        le.append(l)

    eq_nets, gtd_nets = [], []
    for i in range(width):
        eq = nl.add_net(f"eq{i}")
        linv = nl.add_net(f"le{i}_inv")
        gtd = nl.add_net(f"gtd{i}")
        nl.add_instance(f"eq_and{i}", CellKind.BIN_AND.value, {"a": ge[i], "b": le[i], "y": eq})
        nl.add_instance(f"le_inv{i}", CellKind.BIN_INV.value, {"a": le[i], "y": linv})
        nl.add_instance(f"gt_and{i}", CellKind.BIN_AND.value, {"a": ge[i], "b": linv, "y": gtd})
        eq_nets.append(eq)
        gtd_nets.append(gtd)

    acc_gt = gtd_nets[width - 1]
    acc_eq = eq_nets[width - 1]
    for i in range(width - 2, -1, -1):
        t = nl.add_net(f"gt_if_eq{i}")
        nl.add_instance(f"casc_and{i}", CellKind.BIN_AND.value,
                        {"a": acc_eq, "b": gtd_nets[i], "y": t})
        new_gt = nl.add_net(f"acc_gt{i}")
        nl.add_instance(f"casc_or{i}", CellKind.BIN_OR.value,
                        {"a": acc_gt, "b": t, "y": new_gt})
        new_eq = nl.add_net(f"acc_eq{i}")
        nl.add_instance(f"casc_eq{i}", CellKind.BIN_AND.value,
                        {"a": acc_eq, "b": eq_nets[i], "y": new_eq})
        acc_gt, acc_eq = new_gt, new_eq

    nl.add_net("gt")
    nl.add_net("eq")
    nl.add_net("lt")
    nl.add_net("ge_any")
    nl.add_instance("out_gt", CellKind.BIN_OR.value, {"a": acc_gt, "b": acc_gt, "y": "gt"})
    nl.add_instance("out_eq", CellKind.BIN_AND.value, {"a": acc_eq, "b": acc_eq, "y": "eq"})
    nl.add_instance("lt_or", CellKind.BIN_OR.value, {"a": acc_gt, "b": acc_eq, "y": "ge_any"})
    nl.add_instance("lt_inv", CellKind.BIN_INV.value, {"a": "ge_any", "y": "lt"})
    nl.set_ports(xs + ys, ["gt", "eq", "lt"])
    return nl


def _tha_digit(nl: Netlist, inst: str, variant: str, x: str, y: str,
               c: str, s: str, clk: str | None) -> None:
    if variant == "TLG":
        nl.add_instance(inst, CellKind.THA_TLG.value,
                        {"x": x, "y": y, "clk": clk, "c": c, "s": s})
    else:
        nl.add_instance(inst, CellKind.THA_STD.value, {"x": x, "y": y, "c": c, "s": s})


def _ripple_netlist(name: str, width: int, variant: str, subtract: bool) -> Netlist:
    """Shared adder/subtractor ripple: two half adders and a carry merge per
    digit; subtraction inverts y digitwise and injects the +1 as carry-in."""
    nl = Netlist(name)
    xs, ys = _word_inputs(nl, width)
    clk = nl.clock("clk") if variant == "TLG" else None
    out_digit = "d" if subtract else "s"
    outs = [nl.add_net(f"{out_digit}{i}") for i in range(width)]

    operands = []
    for i in range(width):
        if subtract:
            yc = nl.add_net(f"yc{i}")
            nl.add_instance(f"inv_y{i}", CellKind.STI_STD.value, {"a": ys[i], "y": yc})
            operands.append(yc)
        else:
            operands.append(ys[i])

    carry = nl.const(1) if subtract else None
    for i in range(width):
        if i == 0 and not subtract:
            c0 = nl.add_net("c0")
            _tha_digit(nl, "tha0", variant, xs[0], operands[0], c0, outs[0], clk)
            carry = c0
            continue
        t = nl.add_net(f"t{i}")
        c1 = nl.add_net(f"c1_{i}")
        c2 = nl.add_net(f"c2_{i}")
        _tha_digit(nl, f"tha_a{i}", variant, xs[i], operands[i], c1, t, clk)
        _tha_digit(nl, f"tha_b{i}", variant, t, carry, c2, outs[i], clk)
        merged = nl.add_net(f"carry{i}")
        merge_carries(nl, f"merge{i}", c1, c2, merged)
        carry = merged

    cout = "no_borrow" if subtract else "cout"
    nl.add_net(cout)
    # buffer the final carry onto the exported net via the merge rails
    nl.add_net(f"{cout}_z")
    nl.add_net(f"{cout}_hi")
    nl.add_instance(f"{cout}_is0", CellKind.NTI.value, {"a": carry, "y": f"{cout}_z"})
    nl.add_instance(f"{cout}_inv", CellKind.BIN_INV.value, {"a": f"{cout}_z", "y": f"{cout}_hi"})
    nl.add_instance(f"{cout}_r1", CellKind.TGATE.value,
                    {"a": nl.const(1), "en": f"{cout}_hi", "y": cout})
    nl.add_instance(f"{cout}_r0", CellKind.TGATE.value,
                    {"a": nl.const(0), "en": f"{cout}_z", "y": cout})
    nl.set_ports(xs + ys, outs + [cout])
    return nl


def build_adder(width: int, variant: str = "TLG") -> Netlist:
    return _ripple_netlist(f"adder{width}_{variant.lower()}", width, variant, False)


def build_sub(width: int, variant: str = "TLG") -> Netlist:
    return _ripple_netlist(f"sub{width}_{variant.lower()}", width, variant, True)


# -- catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[int, str], Netlist]
    oracle: Callable[[int, str], Callable[[dict], dict]]
    variants: tuple[str, ...] = ("TLG", "STD")
    takes_width: bool = False
    default_width: int = 2
    settle: Callable[[int, str], int] = lambda w, v: 2


def _word_value(values: dict, prefix: str, width: int) -> int:
    total = 0
    for i in reversed(range(width)):
        total = total * 3 + values[f"{prefix}{i}"]
    return total


def _wordcomp_oracle(width: int, variant: str):
    def oracle(values: dict) -> dict:
        x = _word_value(values, "x", width)
        y = _word_value(values, "y", width)
        return {
            "gt": 2 if x > y else 0,
            "eq": 2 if x == y else 0,
            "lt": 2 if x < y else 0,
        }
    return oracle


def _adder_oracle(width: int, variant: str):
    def oracle(values: dict) -> dict:
        total = _word_value(values, "x", width) + _word_value(values, "y", width)
        out = {f"s{i}": (total // 3**i) % 3 for i in range(width)}
        out["cout"] = total // 3**width
        return out
    return oracle


def _sub_oracle(width: int, variant: str):
    def oracle(values: dict) -> dict:
        x = _word_value(values, "x", width)
        y = _word_value(values, "y", width)
        diff = (x - y) % 3**width
        out = {f"d{i}": (diff // 3**i) % 3 for i in range(width)}
        out["no_borrow"] = 1 if x >= y else 0
        return out
    return oracle


def _fixed(fn):
    return lambda width, variant: fn


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry("sti", _build_sti, _fixed(lambda v: {"y": sti(v["x"])})),
        CatalogEntry("and", _build_and, _fixed(lambda v: {"o": tmin(v["x"], v["y"])})),
        CatalogEntry("or", _build_or, _fixed(lambda v: {"o": tmax(v["x"], v["y"])})),
        CatalogEntry("xor", _build_xor, _fixed(lambda v: {"s": txor(v["x"], v["y"])})),
        CatalogEntry("comp1", _build_comp1, _fixed(lambda v: {
            "o": 2 if v["x"] >= v["y"] else 0,
            "obar": 0 if v["x"] >= v["y"] else 2,
        })),
        CatalogEntry("tha", _build_tha, _fixed(lambda v: {
            "c": 1 if v["x"] + v["y"] >= 3 else 0,
            "s": txor(v["x"], v["y"]),
        })),
        CatalogEntry("hsub", _build_hsub, _fixed(lambda v: {
            "diff": (v["x"] - v["y"]) % 3,
            "borrow": 1 if v["x"] < v["y"] else 0,
        }), settle=lambda w, v: 4),
        CatalogEntry("wordcomp", lambda w, v: build_wordcomp(w, v),
                     _wordcomp_oracle, takes_width=True,
                     settle=lambda w, v: 3),
        CatalogEntry("adder", lambda w, v: build_adder(w, v),
                     _adder_oracle, takes_width=True,
                     settle=lambda w, v: w + 2 if v == "TLG" else 2),
        CatalogEntry("sub", lambda w, v: build_sub(w, v),
                     _sub_oracle, takes_width=True,
                     settle=lambda w, v: w + 3 if v == "TLG" else 2),
    )
}


def catalog_names() -> list[str]:
    return list(CATALOG)


def build_circuit(name: str, width: int | None = None, variant: str = "TLG") -> Netlist:
    """Build a catalog circuit; raises CatalogError with the catalog listed."""
    entry = CATALOG.get(name)
    if entry is None:
        raise CatalogError(
            f"unknown circuit {name!r}; catalog: {', '.join(catalog_names())}"
        )
    variant = variant.upper()
    if variant not in entry.variants:
        raise CatalogError(
            f"circuit {name!r} has variants {'/'.join(entry.variants)}, not {variant!r}"
        )
    if width is None:
        width = entry.default_width
    if entry.takes_width and not 1 <= width <= MAX_WIDTH:
        raise CatalogError(f"width must be in 1..{MAX_WIDTH}, got {width}")
    return entry.build(width, variant)


def oracle_for(name: str, width: int | None = None, variant: str = "TLG"):
    entry = CATALOG.get(name)
    if entry is None:
        raise CatalogError(
            f"unknown oracle {name!r}; catalog: {', '.join(catalog_names())}"
        )
    return entry.oracle(width or entry.default_width, variant.upper())


def settle_cycles_for(name: str, width: int | None = None, variant: str = "TLG") -> int:
    entry = CATALOG.get(name)
    if entry is None:
        raise CatalogError(f"unknown circuit {name!r}")
    return entry.settle(width or entry.default_width, variant.upper())
