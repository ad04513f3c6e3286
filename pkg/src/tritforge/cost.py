"""Abstract cost accounting: device counts, unit delays, toggle energy.

The model is deliberately technology-free.  Area is proxied by transistor
count per cell kind, delay by unit-depth (every primitive costs one gate
unit), energy by counted output transitions weighted per driving kind, and
static power by a per-kind leakage weight.  Absolute silicon figures are
out of scope; what the model guarantees is additivity, monotonicity,
linearity, and deterministic reports.

Default device counts are derived by counting a documented topology per
primitive (see ``data/default_costs.json``); every composite kind's entry
equals the sum over its structural expansion, so counting a hierarchical
netlist gives the same total as counting its flattened form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .netlist import Netlist

try:
    import tomllib as _toml
except ImportError:  # Python 3.10
    import tomli as _toml


class CostError(ValueError):
    """Missing cost entry or malformed cost file."""


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        f = v
    elif isinstance(v, str):
        f = Fraction(v)
    elif isinstance(v, int):
        f = Fraction(v)
    elif isinstance(v, float):
        f = Fraction(str(v))
    else:
        raise CostError(f"bad numeric value {v!r}")
    if f < 0:
        raise CostError(f"cost values must be >= 0, got {v!r}")
    return f


@dataclass(frozen=True)
class CostEntry:
    devices: int
    delay_units: Fraction
    toggle_energy: Fraction
    leakage: Fraction

    def scaled(self, devices: int = 1, delay: Fraction = 1,
               toggle: Fraction = 1, leak: Fraction = 1) -> "CostEntry":
        return CostEntry(
            self.devices * devices,
            self.delay_units * delay,
            self.toggle_energy * toggle,
            self.leakage * leak,
        )


class CostModel:
    """Per-kind costs; lookup failures name the offending kind."""

    def __init__(self, entries: dict[str, CostEntry]):
        self.entries = dict(entries)
        for kind, e in self.entries.items():
            if e.devices < 0:
                raise CostError(f"negative device count for {kind}")

    def entry(self, kind: str) -> CostEntry:
        try:
            return self.entries[kind]
        except KeyError:
            raise CostError(f"no cost entry for cell kind {kind!r}") from None

    def scaled(self, devices: int = 1, delay=1, toggle=1, leak=1) -> "CostModel":
        delay, toggle, leak = map(_as_fraction, (delay, toggle, leak))
        return CostModel(
            {k: e.scaled(devices, delay, toggle, leak) for k, e in self.entries.items()}
        )

    @classmethod
    def from_dict(cls, data: dict) -> "CostModel":
        cells = data.get("cells")
        if not isinstance(cells, dict):
            raise CostError("cost file must contain a 'cells' table")
        entries = {}
        for kind, row in cells.items():
            try:
                entries[kind] = CostEntry(
                    devices=int(row["devices"]),
                    delay_units=_as_fraction(row["delay_units"]),
                    toggle_energy=_as_fraction(row["toggle_energy"]),
                    leakage=_as_fraction(row["leakage"]),
                )
            except KeyError as exc:
                raise CostError(f"cost entry for {kind!r} is missing {exc}") from None
        return cls(entries)

    def to_dict(self) -> dict:
        return {
            "cells": {
                kind: {
                    "devices": e.devices,
                    "delay_units": _fmt_number(e.delay_units),
                    "toggle_energy": _fmt_number(e.toggle_energy),
                    "leakage": _fmt_number(e.leakage),
                }
                for kind, e in self.entries.items()
            }
        }

    @classmethod
    def load(cls, path: str | Path) -> "CostModel":
        path = Path(path)
        if path.suffix.lower() == ".toml":
            data = _toml.loads(path.read_text())
        else:
            data = json.loads(path.read_text())
        return cls.from_dict(data)


def _fmt_number(f: Fraction):
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


def fmt_quantity(f: Fraction) -> str:
    """Deterministic rendering: integers plain, dyadic/decimal fractions as
    terminating decimals, anything else as a/b."""
    if f.denominator == 1:
        return str(int(f))
    for exp in range(1, 13):
        scaled = f * 10**exp
        if scaled.denominator == 1:
            return f"{f.numerator / f.denominator:.{exp}f}"
    return f"{f.numerator}/{f.denominator}"


#: Documented primitive device counts (see README for the counting notes):
#: two-transistor inverters for NTI/PTI/BIN_INV, 6 for the two-stage binary
#: AND/OR, 2 per transmission gate, and 50 for the clocked TLG (per-input
#: decode 4x8, differential comparator core 10, SR latch 8).
_PRIMITIVE_DEVICES = {
    "CONST": 0,
    "NTI": 2,
    "PTI": 2,
    "BIN_INV": 2,
    "BIN_AND": 6,
    "BIN_OR": 6,
    "TGATE": 2,
    "TLG_RAW": 50,
}

_TOGGLE_PER_DEVICE = Fraction(1, 2)
_LEAK_PER_DEVICE = Fraction(1, 10)


def derive_default_model() -> CostModel:
    """Build the default model from the primitive counts and cell structures.

    Composite entries (and the two primitives that carry reference
    structures) take their device totals from the structural expansion, so
    the model is compositional by construction.  Delay is the unit-depth
    model: one gate unit per primitive, zero for constants.
    """
    from .cells import LIBRARY, CellKind

    devices: dict[str, int] = {}

    def count(kind: CellKind) -> int:
        key = kind.value
        if key in devices:
            return devices[key]
        spec = LIBRARY[kind]
        if key in _PRIMITIVE_DEVICES and spec.structure_factory is None:
            total = _PRIMITIVE_DEVICES[key]
        elif spec.structure_factory is not None:
            total = sum(count(CellKind(i.kind)) for i in spec.structure.instances)
        else:
            total = _PRIMITIVE_DEVICES[key]
        devices[key] = total
        return total

    entries = {}
    for kind in CellKind:
        n = count(kind)
        delay = Fraction(0) if kind is CellKind.CONST else Fraction(1)
        entries[kind.value] = CostEntry(
            devices=n,
            delay_units=delay,
            toggle_energy=n * _TOGGLE_PER_DEVICE,
            leakage=n * _LEAK_PER_DEVICE,
        )
    return CostModel(entries)


_DEFAULT_PATH = Path(__file__).parent / "data" / "default_costs.json"
_default_cache: CostModel | None = None


def default_cost_model() -> CostModel:
    """The packaged default cost file (override via CLI --costs)."""
    global _default_cache
    if _default_cache is None:
        _default_cache = CostModel.load(_DEFAULT_PATH)
    return _default_cache


def transistor_count(circuit, costs: CostModel) -> int:
    """Total device count: the per-kind entry summed over all instances.

    Accepts a hierarchical :class:`~tritforge.netlist.Netlist` or an
    elaborated flat netlist; totals agree because composite entries equal
    their expansion sums in any consistently derived model.
    """
    return sum(costs.entry(_kind_name(i.kind)).devices for i in circuit.instances)


def _kind_name(kind) -> str:
    return kind.value if hasattr(kind, "value") else str(kind)


def critical_path(flat, costs: CostModel) -> Fraction:
    """Longest register-to-register combinational path, in delay units.

    Launch points are primary inputs and sequential-cell outputs (TLG,
    latch); capture points are primary outputs and sequential-cell inputs.
    Sequential cells contribute no delay of their own.  The combinational
    subgraph must be acyclic (transmission-gate latch loops have no static
    path length).
    """
    from .cells import LIBRARY, CellKind

    seq = (CellKind.TLG_RAW, CellKind.DLATCH)
    dist: dict[int, Fraction | None] = {n: None for n in range(flat.n_nets)}
    for n in flat.inputs:
        dist[n] = Fraction(0)
    pos: dict[int, int] = {}
    for order_pos, idx in enumerate(flat.order):
        pos[idx] = order_pos

    comb_driver: dict[int, int] = {}
    for idx, inst in enumerate(flat.instances):
        if inst.kind in seq:
            for p in LIBRARY[inst.kind].ports:
                if p.direction == "out":
                    dist[inst.conns[p.name]] = Fraction(0)
        else:
            for p in LIBRARY[inst.kind].ports:
                if p.direction == "out":
                    comb_driver[inst.conns[p.name]] = idx

    best = Fraction(0)
    for idx in flat.order:
        inst = flat.instances[idx]
        if inst.kind in seq:
            continue
        spec = LIBRARY[inst.kind]
        delay = costs.entry(inst.kind.value).delay_units
        arrival = None
        for p in spec.ports:
            if p.direction != "in":
                continue
            net = inst.conns[p.name]
            driver = comb_driver.get(net)
            if driver is not None and pos[driver] > pos[idx]:
                raise CostError(
                    f"combinational cycle through {inst.id!r}; no static path length"
                )
            d = dist[net]
            if d is not None and (arrival is None or d > arrival):
                arrival = d
        if arrival is None:
            continue  # fed by constants only; never on a launched path
        for p in spec.ports:
            if p.direction == "out":
                net = inst.conns[p.name]
                total = arrival + delay
                if dist[net] is None or total > dist[net]:
                    dist[net] = total

    capture: set[int] = set(flat.outputs)
    for inst in flat.instances:
        if inst.kind in seq:
            for p in LIBRARY[inst.kind].ports:
                if p.direction == "in" and not p.is_clock:
                    capture.add(inst.conns[p.name])
    for net in capture:
        d = dist[net]
        if d is not None and d > best:
            best = d
    return best


@dataclass(frozen=True)
class VariantRow:
    name: str
    device_count: int
    leakage_sum: Fraction
    toggle_energy: Fraction
    critical_path_delay: Fraction
    @property
    def energy_delay_product(self) -> Fraction:
        return self.toggle_energy * self.critical_path_delay


@dataclass
class ComparisonReport:
    """Rows of measured variants, rendered as a fixed-column table."""

    rows: list[VariantRow]

    COLUMNS = ("Circuit", "Devices", "Leakage", "Energy", "Delay", "EDP")

    def merged(self, other: "ComparisonReport") -> "ComparisonReport":
        return ComparisonReport(self.rows + other.rows)

    def cells(self) -> list[list[str]]:
        out = []
        for r in self.rows:
            out.append([
                r.name,
                str(r.device_count),
                fmt_quantity(r.leakage_sum),
                fmt_quantity(r.toggle_energy),
                fmt_quantity(r.critical_path_delay),
                fmt_quantity(r.energy_delay_product),
            ])
        return out

    def render(self, fmt: str = "text") -> str:
        body = self.cells()
        if fmt == "csv":
            lines = [",".join(self.COLUMNS)]
            lines += [",".join(row) for row in body]
            return "\n".join(lines) + "\n"
        if fmt == "md":
            lines = ["| " + " | ".join(self.COLUMNS) + " |"]
            lines.append("|" + "|".join(" --- " for _ in self.COLUMNS) + "|")
            lines += ["| " + " | ".join(row) + " |" for row in body]
            return "\n".join(lines) + "\n"
        if fmt == "text":
            widths = [
                max(len(self.COLUMNS[c]), *(len(r[c]) for r in body)) if body
                else len(self.COLUMNS[c])
                for c in range(len(self.COLUMNS))
            ]
            lines = ["  ".join(h.ljust(w) for h, w in zip(self.COLUMNS, widths))]
            lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in body]
            return "\n".join(ln.rstrip() for ln in lines) + "\n"
        raise CostError(f"unknown report format {fmt!r}")


def measure(
    circuit,
    stimulus: list[dict[str, int]],
    costs: CostModel,
    name: str | None = None,
    cycles: int | None = None,
) -> ComparisonReport:
    """Simulate under *stimulus* and produce one report row.

    Toggle energy counts per-net value transitions between consecutive
    sampled phases, weighted by the driving cell's entry; a floating sample
    holds the previous value and is not a transition.
    """
    from .sim.elaborate import FlatNetlist, elaborate
    from .sim.engine import simulate

    flat = circuit if isinstance(circuit, FlatNetlist) else elaborate(circuit)
    trace = simulate(flat, stimulus, cycles=cycles)

    from .cells import LIBRARY

    driver_kind: dict[int, str] = {}
    for inst in flat.instances:
        for p in LIBRARY[inst.kind].ports:
            if p.direction == "out":
                driver_kind[inst.conns[p.name]] = inst.kind.value

    energy = Fraction(0)
    for net, kind in driver_kind.items():
        toggles = 0
        last = None
        for row in range(len(trace.samples)):
            v = int(trace.samples[row][net])
            if v == 3:
                continue  # floating: holds, no transition
            if last is not None and v != last:
                toggles += 1
            last = v
        if toggles:
            energy += toggles * costs.entry(kind).toggle_energy

    leak = sum(
        (costs.entry(i.kind.value).leakage for i in flat.instances), Fraction(0)
    )
    row = VariantRow(
        name=name or flat.name,
        device_count=transistor_count(flat, costs),
        leakage_sum=leak,
        toggle_energy=energy,
        critical_path_delay=critical_path(flat, costs),
    )
    return ComparisonReport([row])
