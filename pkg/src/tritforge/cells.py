"""Cell library: primitive cells and the TLG-based composite circuits.

Each cell kind publishes a fixed port signature, an optional behavioral
reference function (settled post-edge outputs as a function of data
inputs), and an optional structural expansion into primitive cells.  The
verify engine checks structure against behavior exhaustively for every
cell that defines both.

Primitive kinds are what the simulator evaluates directly; composite
kinds always expand during elaboration.  STI_STD and DLATCH are primitives
that additionally carry a reference structure (the general three-network
form and the cross-coupled-inverter latch), used by the equivalence tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from .netlist import Netlist
from .trits import sti, tmax, tmin, txor


class CellKind(str, enum.Enum):
    NTI = "NTI"
    PTI = "PTI"
    STI_STD = "STI_STD"
    STI_TLG = "STI_TLG"
    AND_TLG = "AND_TLG"
    OR_TLG = "OR_TLG"
    XOR_TLG = "XOR_TLG"
    COMP1_TLG = "COMP1_TLG"
    CARRY_TLG = "CARRY_TLG"
    THA_TLG = "THA_TLG"
    THA_STD = "THA_STD"
    HSUB_TLG = "HSUB_TLG"
    DLATCH = "DLATCH"
    DFF = "DFF"
    TGATE = "TGATE"
    BIN_INV = "BIN_INV"
    BIN_AND = "BIN_AND"
    BIN_OR = "BIN_OR"
    TLG_RAW = "TLG_RAW"
    CONST = "CONST"


@dataclass(frozen=True)
class Port:
    name: str
    direction: str  # "in" | "out"
    is_clock: bool = False


@dataclass
class CellSpec:
    """Published cell contract: ports, clocking, behavior, structure."""

    kind: CellKind
    ports: tuple[Port, ...]
    clocked: bool = False
    primitive: bool = False
    behavioral: Callable[[dict[str, int]], dict[str, int]] | None = None
    structure_factory: Callable[[], Netlist] | None = field(default=None, repr=False)
    param_names: tuple[str, ...] = ()
    _structure: Netlist | None = field(default=None, repr=False)

    @property
    def structure(self) -> Netlist | None:
        if self._structure is None and self.structure_factory is not None:
            self._structure = self.structure_factory()
        return self._structure

    def data_inputs(self) -> list[str]:
        return [p.name for p in self.ports if p.direction == "in" and not p.is_clock]

    def output_names(self) -> list[str]:
        return [p.name for p in self.ports if p.direction == "out"]

    def clock_port(self) -> str | None:
        for p in self.ports:
            if p.is_clock:
                return p.name
        return None


def _ports(ins: list[str], outs: list[str], clk: str | None = None) -> tuple[Port, ...]:
    ports = [Port(n, "in") for n in ins]
    if clk is not None:
        ports.append(Port(clk, "in", is_clock=True))
    ports.extend(Port(n, "out") for n in outs)
    return tuple(ports)


COMP1_WEIGHTS = {"n1": 1, "n2": 0, "n3": 0, "n4": 1}
CARRY_WEIGHTS = {"n1": 2, "n2": 2, "n3": 3, "n4": 0}


def _comp1_tlg(nl: Netlist, inst: str, a: str, d: str, o: str, obar: str, clk: str) -> None:
    """One x-versus-y threshold comparator: o is high iff a >= d."""
    nl.add_instance(
        inst,
        CellKind.TLG_RAW.value,
        {"a": a, "b": nl.const(0), "c": nl.const(0), "d": d,
         "clk": clk, "o": o, "obar": obar},
        COMP1_WEIGHTS,
    )


def _sti_tlg_structure() -> Netlist:
    # Two comparators (against 1 and 2) drive transmission gates that route
    # the Vdd / Vbb / ground rails to the output.
    nl = Netlist("sti_tlg")
    nl.add_net("x")
    nl.clock("clk")
    nl.add_net("y")
    for n in ("ge1", "lt1", "ge2", "lt2", "is1"):
        nl.add_net(n)
    _comp1_tlg(nl, "cmp_ge1", "x", nl.const(1), "ge1", "lt1", "clk")
    _comp1_tlg(nl, "cmp_ge2", "x", nl.const(2), "ge2", "lt2", "clk")
    nl.add_instance("sel_mid", CellKind.BIN_AND.value, {"a": "ge1", "b": "lt2", "y": "is1"})
    nl.add_instance("route2", CellKind.TGATE.value, {"a": nl.const(2), "en": "lt1", "y": "y"})
    nl.add_instance("route1", CellKind.TGATE.value, {"a": nl.const(1), "en": "is1", "y": "y"})
    nl.add_instance("route0", CellKind.TGATE.value, {"a": nl.const(0), "en": "ge2", "y": "y"})
    nl.set_ports(["x"], ["y"])
    return nl


def _minmax_structure(name: str, pick_min: bool) -> Netlist:
    # Input latches freeze x and y through the evaluate phase; the two
    # comparators then steer one of the latched operands to the output.
    # On a tie both gates conduct the same value, which is legal.
    nl = Netlist(name)
    for n in ("x", "y"):
        nl.add_net(n)
    nl.clock("clk")
    for n in ("xl", "yl", "sel_yx", "nsel_yx", "sel_xy", "nsel_xy", "o"):
        nl.add_net(n)
    nl.add_instance("lat_x", CellKind.DLATCH.value, {"d": "x", "en": "clk", "q": "xl"})
    nl.add_instance("lat_y", CellKind.DLATCH.value, {"d": "y", "en": "clk", "q": "yl"})
    _comp1_tlg(nl, "cmp_yx", "yl", "xl", "sel_yx", "nsel_yx", "clk")  # y >= x
    _comp1_tlg(nl, "cmp_xy", "xl", "yl", "sel_xy", "nsel_xy", "clk")  # x >= y
    if pick_min:
        x_ctrl, y_ctrl = "sel_yx", "sel_xy"  # y >= x selects x
    else:
        x_ctrl, y_ctrl = "sel_xy", "sel_yx"  # x >= y selects x
    nl.add_instance("route_x", CellKind.TGATE.value, {"a": "xl", "en": x_ctrl, "y": "o"})
    nl.add_instance("route_y", CellKind.TGATE.value, {"a": "yl", "en": y_ctrl, "y": "o"})
    nl.set_ports(["x", "y"], ["o"])
    return nl


def _xor_tlg_structure() -> Netlist:
    # Four threshold gates classify the arithmetic sum x + y; their outputs
    # gate a one-hot selection among the three rails.
    nl = Netlist("xor_tlg")
    for n in ("x", "y"):
        nl.add_net(n)
    nl.clock("clk")
    nl.add_net("s")
    one = nl.const(1)
    zero = nl.const(0)
    for k in (1, 2, 3, 4):
        nl.add_net(f"ge{k}")
        nl.add_net(f"lt{k}")
        nl.add_instance(
            f"sum_ge{k}",
            CellKind.TLG_RAW.value,
            {"a": "x", "b": "y", "c": zero, "d": one,
             "clk": "clk", "o": f"ge{k}", "obar": f"lt{k}"},
            {"n1": 1, "n2": 1, "n3": 0, "n4": k},
        )
    for n in ("eq3", "sel0", "eq1", "sel1", "sel2"):
        nl.add_net(n)
    nl.add_instance("and_eq3", CellKind.BIN_AND.value, {"a": "ge3", "b": "lt4", "y": "eq3"})
    nl.add_instance("or_sel0", CellKind.BIN_OR.value, {"a": "lt1", "b": "eq3", "y": "sel0"})
    nl.add_instance("and_eq1", CellKind.BIN_AND.value, {"a": "ge1", "b": "lt2", "y": "eq1"})
    nl.add_instance("or_sel1", CellKind.BIN_OR.value, {"a": "eq1", "b": "ge4", "y": "sel1"})
    nl.add_instance("and_sel2", CellKind.BIN_AND.value, {"a": "ge2", "b": "lt3", "y": "sel2"})
    nl.add_instance("route0", CellKind.TGATE.value, {"a": zero, "en": "sel0", "y": "s"})
    nl.add_instance("route1", CellKind.TGATE.value, {"a": one, "en": "sel1", "y": "s"})
    nl.add_instance("route2", CellKind.TGATE.value, {"a": nl.const(2), "en": "sel2", "y": "s"})
    nl.set_ports(["x", "y"], ["s"])
    return nl


def _comp1_structure() -> Netlist:
    nl = Netlist("comp1_tlg")
    for n in ("x", "y"):
        nl.add_net(n)
    nl.clock("clk")
    for n in ("o", "obar"):
        nl.add_net(n)
    _comp1_tlg(nl, "cmp", "x", "y", "o", "obar", "clk")
    nl.set_ports(["x", "y"], ["o", "obar"])
    return nl


def _carry_tlg_structure() -> Netlist:
    # Single TLG firing iff x + y >= 3; the transmission gate routes Vbb so
    # the carry digit reads 1 (not the binary-as-ternary 2).
    nl = Netlist("carry_tlg")
    for n in ("x", "y"):
        nl.add_net(n)
    nl.clock("clk")
    for n in ("c", "hi", "lo"):
        nl.add_net(n)
    nl.add_instance(
        "sum_ge3",
        CellKind.TLG_RAW.value,
        {"a": "x", "b": "y", "c": nl.const(2), "d": nl.const(0),
         "clk": "clk", "o": "hi", "obar": "lo"},
        CARRY_WEIGHTS,
    )
    nl.add_instance("route1", CellKind.TGATE.value, {"a": nl.const(1), "en": "hi", "y": "c"})
    nl.add_instance("route0", CellKind.TGATE.value, {"a": nl.const(0), "en": "lo", "y": "c"})
    nl.set_ports(["x", "y"], ["c"])
    return nl


def _tha_tlg_structure() -> Netlist:
    nl = Netlist("tha_tlg")
    for n in ("x", "y"):
        nl.add_net(n)
    nl.clock("clk")
    for n in ("c", "s"):
        nl.add_net(n)
    nl.add_instance("sum", CellKind.XOR_TLG.value, {"x": "x", "y": "y", "clk": "clk", "s": "s"})
    nl.add_instance("carry", CellKind.CARRY_TLG.value, {"x": "x", "y": "y", "clk": "clk", "c": "c"})
    nl.set_ports(["x", "y"], ["c", "s"])
    return nl


def _tha_std_structure() -> Netlist:
    from .synth import tha_std_structure

    return tha_std_structure()


def _sti_std_structure() -> Netlist:
    from .synth import sti_general_structure

    return sti_general_structure()


def merge_carries(nl: Netlist, prefix: str, c1: str, c2: str, out: str) -> None:
    """Combine two half-adder carries that are never simultaneously 1.

    Both carries live in {0, 1}; the merged digit is routed from the rails
    so it stays in {0, 1} as well.
    """
    z1 = nl.add_net(f"{prefix}_z1")
    z2 = nl.add_net(f"{prefix}_z2")
    none_hi = nl.add_net(f"{prefix}_none")
    some_hi = nl.add_net(f"{prefix}_some")
    nl.add_instance(f"{prefix}_is0_a", CellKind.NTI.value, {"a": c1, "y": z1})
    nl.add_instance(f"{prefix}_is0_b", CellKind.NTI.value, {"a": c2, "y": z2})
    nl.add_instance(f"{prefix}_and", CellKind.BIN_AND.value, {"a": z1, "b": z2, "y": none_hi})
    nl.add_instance(f"{prefix}_inv", CellKind.BIN_INV.value, {"a": none_hi, "y": some_hi})
    nl.add_instance(f"{prefix}_route1", CellKind.TGATE.value, {"a": nl.const(1), "en": some_hi, "y": out})
    nl.add_instance(f"{prefix}_route0", CellKind.TGATE.value, {"a": nl.const(0), "en": none_hi, "y": out})


def _hsub_tlg_structure() -> Netlist:
    # Complement-based subtraction: diff = (x + (2 - y) + 1) mod 3 through
    # two half adders; the borrow is the inverted merged carry.
    nl = Netlist("hsub_tlg")
    for n in ("x", "y"):
        nl.add_net(n)
    nl.clock("clk")
    for n in ("diff", "borrow", "ys", "s1", "c1", "c2", "carry"):
        nl.add_net(n)
    nl.add_instance("comp_y", CellKind.STI_STD.value, {"a": "y", "y": "ys"})
    nl.add_instance("add1", CellKind.THA_TLG.value,
                    {"x": "x", "y": "ys", "clk": "clk", "c": "c1", "s": "s1"})
    nl.add_instance("add2", CellKind.THA_TLG.value,
                    {"x": "s1", "y": nl.const(1), "clk": "clk", "c": "c2", "s": "diff"})
    merge_carries(nl, "m", "c1", "c2", "carry")
    no_carry = nl.add_net("no_carry")
    carry_hi = nl.add_net("carry_hi")
    nl.add_instance("b_is0", CellKind.NTI.value, {"a": "carry", "y": "no_carry"})
    nl.add_instance("b_inv", CellKind.BIN_INV.value, {"a": "no_carry", "y": "carry_hi"})
    nl.add_instance("b_route1", CellKind.TGATE.value, {"a": nl.const(1), "en": "no_carry", "y": "borrow"})
    nl.add_instance("b_route0", CellKind.TGATE.value, {"a": nl.const(0), "en": "carry_hi", "y": "borrow"})
    nl.set_ports(["x", "y"], ["diff", "borrow"])
    return nl


def _dlatch_structure() -> Netlist:
    # Paper-style latch: input gate, two cross-coupled inverters, feedback
    # gate on the opposite clock phase.
    nl = Netlist("dlatch_ref")
    for n in ("d", "en"):
        nl.add_net(n)
    for n in ("q", "en_n", "m", "qb"):
        nl.add_net(n)
    nl.add_instance("inv_en", CellKind.BIN_INV.value, {"a": "en", "y": "en_n"})
    nl.add_instance("pass_in", CellKind.TGATE.value, {"a": "d", "en": "en", "y": "m"})
    nl.add_instance("inv_fwd", CellKind.STI_STD.value, {"a": "m", "y": "qb"})
    nl.add_instance("inv_back", CellKind.STI_STD.value, {"a": "qb", "y": "q"})
    nl.add_instance("pass_fb", CellKind.TGATE.value, {"a": "q", "en": "en_n", "y": "m"})
    nl.set_ports(["d", "en"], ["q"])
    return nl


def _dff_structure() -> Netlist:
    nl = Netlist("dff")
    nl.add_net("d")
    nl.clock("clk")
    for n in ("q", "clk_n", "m"):
        nl.add_net(n)
    nl.add_instance("inv_clk", CellKind.BIN_INV.value, {"a": "clk", "y": "clk_n"})
    nl.add_instance("master", CellKind.DLATCH.value, {"d": "d", "en": "clk", "q": "m"})
    nl.add_instance("slave", CellKind.DLATCH.value, {"d": "m", "en": "clk_n", "q": "q"})
    nl.set_ports(["d"], ["q"])
    return nl


def _carry_digit(x: int, y: int) -> int:
    return 1 if x + y >= 3 else 0


LIBRARY: dict[CellKind, CellSpec] = {}


def _register(spec: CellSpec) -> CellSpec:
    LIBRARY[spec.kind] = spec
    return spec


_register(CellSpec(CellKind.NTI, _ports(["a"], ["y"]), primitive=True,
                   behavioral=lambda v: {"y": 2 if v["a"] == 0 else 0}))
_register(CellSpec(CellKind.PTI, _ports(["a"], ["y"]), primitive=True,
                   behavioral=lambda v: {"y": 2 if v["a"] != 2 else 0}))
_register(CellSpec(CellKind.STI_STD, _ports(["a"], ["y"]), primitive=True,
                   behavioral=lambda v: {"y": sti(v["a"])},
                   structure_factory=_sti_std_structure))
_register(CellSpec(CellKind.BIN_INV, _ports(["a"], ["y"]), primitive=True,
                   behavioral=lambda v: {"y": 0 if v["a"] == 2 else 2}))
_register(CellSpec(CellKind.BIN_AND, _ports(["a", "b"], ["y"]), primitive=True,
                   behavioral=lambda v: {"y": 2 if v["a"] == 2 and v["b"] == 2 else 0}))
_register(CellSpec(CellKind.BIN_OR, _ports(["a", "b"], ["y"]), primitive=True,
                   behavioral=lambda v: {"y": 2 if v["a"] == 2 or v["b"] == 2 else 0}))
_register(CellSpec(CellKind.TGATE, _ports(["a", "en"], ["y"]), primitive=True))
_register(CellSpec(CellKind.CONST, _ports([], ["y"]), primitive=True,
                   param_names=("value",)))
_register(CellSpec(CellKind.TLG_RAW,
                   _ports(["a", "b", "c", "d"], ["o", "obar"], clk="clk"),
                   clocked=True, primitive=True,
                   param_names=("n1", "n2", "n3", "n4")))
_register(CellSpec(CellKind.DLATCH, _ports(["d", "en"], ["q"]),
                   clocked=True, primitive=True,
                   behavioral=lambda v: {"q": v["d"]},
                   structure_factory=_dlatch_structure))
_register(CellSpec(CellKind.DFF, _ports(["d"], ["q"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {"q": v["d"]},
                   structure_factory=_dff_structure))
_register(CellSpec(CellKind.STI_TLG, _ports(["x"], ["y"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {"y": sti(v["x"])},
                   structure_factory=_sti_tlg_structure))
_register(CellSpec(CellKind.AND_TLG, _ports(["x", "y"], ["o"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {"o": tmin(v["x"], v["y"])},
                   structure_factory=lambda: _minmax_structure("and_tlg", True)))
_register(CellSpec(CellKind.OR_TLG, _ports(["x", "y"], ["o"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {"o": tmax(v["x"], v["y"])},
                   structure_factory=lambda: _minmax_structure("or_tlg", False)))
_register(CellSpec(CellKind.XOR_TLG, _ports(["x", "y"], ["s"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {"s": txor(v["x"], v["y"])},
                   structure_factory=_xor_tlg_structure))
_register(CellSpec(CellKind.COMP1_TLG, _ports(["x", "y"], ["o", "obar"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {
                       "o": 2 if v["x"] >= v["y"] else 0,
                       "obar": 0 if v["x"] >= v["y"] else 2,
                   },
                   structure_factory=_comp1_structure))
_register(CellSpec(CellKind.CARRY_TLG, _ports(["x", "y"], ["c"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {"c": _carry_digit(v["x"], v["y"])},
                   structure_factory=_carry_tlg_structure))
_register(CellSpec(CellKind.THA_TLG, _ports(["x", "y"], ["c", "s"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {"c": _carry_digit(v["x"], v["y"]),
                                         "s": txor(v["x"], v["y"])},
                   structure_factory=_tha_tlg_structure))
_register(CellSpec(CellKind.THA_STD, _ports(["x", "y"], ["c", "s"]),
                   behavioral=lambda v: {"c": _carry_digit(v["x"], v["y"]),
                                         "s": txor(v["x"], v["y"])},
                   structure_factory=_tha_std_structure))
_register(CellSpec(CellKind.HSUB_TLG, _ports(["x", "y"], ["diff", "borrow"], clk="clk"),
                   clocked=True,
                   behavioral=lambda v: {"diff": (v["x"] - v["y"]) % 3,
                                         "borrow": 1 if v["x"] < v["y"] else 0},
                   structure_factory=_hsub_tlg_structure))


def spec_for(kind: CellKind | str) -> CellSpec:
    """Look up a cell spec by kind (name or enum member)."""
    key = CellKind(kind) if not isinstance(kind, CellKind) else kind
    return LIBRARY[key]


def sti_tlg_cell() -> CellSpec:
    return LIBRARY[CellKind.STI_TLG]


def and_tlg_cell() -> CellSpec:
    return LIBRARY[CellKind.AND_TLG]


def or_tlg_cell() -> CellSpec:
    return LIBRARY[CellKind.OR_TLG]


def xor_tlg_cell() -> CellSpec:
    return LIBRARY[CellKind.XOR_TLG]


def comp1_tlg_cell() -> CellSpec:
    return LIBRARY[CellKind.COMP1_TLG]


def carry_tlg_cell() -> CellSpec:
    return LIBRARY[CellKind.CARRY_TLG]


def tha_cell(variant: str = "TLG") -> CellSpec:
    return LIBRARY[CellKind.THA_TLG if variant.upper() == "TLG" else CellKind.THA_STD]


def hsub_cell() -> CellSpec:
    return LIBRARY[CellKind.HSUB_TLG]


def dlatch_cell() -> CellSpec:
    return LIBRARY[CellKind.DLATCH]


def dff_cell() -> CellSpec:
    return LIBRARY[CellKind.DFF]


def catalog() -> list[dict]:
    """Port/clocking summary of every cell kind, for the CLI dump."""
    entries = []
    for kind in CellKind:
        spec = LIBRARY[kind]
        entries.append(
            {
                "kind": kind.value,
                "primitive": spec.primitive,
                "clocked": spec.clocked,
                "ports": [
                    {"name": p.name, "direction": p.direction, "clock": p.is_clock}
                    for p in spec.ports
                ],
                "params": list(spec.param_names),
            }
        )
    return entries
