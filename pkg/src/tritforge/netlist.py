"""Structural circuit representation and its JSON wire format.

A netlist is a directed graph of cell instances over named nets.  Net kinds
are ``signal``, ``clock`` (the single global clock), and the three constant
rails ``const0``/``const1``/``const2``.  Instances reference cells by kind
name; composite kinds are expanded to primitives during elaboration.

JSON schema (field order is stable so emitted files are diffable)::

    {
      "name": str,
      "ports": {"inputs": [net, ...], "outputs": [net, ...]},
      "nets": [{"id": str, "kind": str}, ...],
      "instances": [{"id": str, "kind": str, "conns": {port: net},
                     "params": {...}}, ...]
    }

``params`` is omitted when empty (TLG weights and constant values live
there).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

NET_KINDS = ("signal", "clock", "const0", "const1", "const2")

CONST_NET_VALUE = {"const0": 0, "const1": 1, "const2": 2}


class NetlistError(ValueError):
    """Malformed netlist: duplicate ids, unknown nets, bad kinds."""


@dataclass(frozen=True)
class Net:
    id: str
    kind: str = "signal"

    def __post_init__(self) -> None:
        if self.kind not in NET_KINDS:
            raise NetlistError(f"unknown net kind {self.kind!r} for net {self.id!r}")


@dataclass
class Instance:
    id: str
    kind: str
    conns: dict[str, str]
    params: dict[str, int] = field(default_factory=dict)


class Netlist:
    """Mutable netlist builder with deterministic ordering."""

    def __init__(self, name: str):
        self.name = name
        self.nets: dict[str, Net] = {}
        self.instances: list[Instance] = []
        self.inputs: list[str] = []
        self.outputs: list[str] = []
        self._ids: set[str] = set()

    def add_net(self, net_id: str, kind: str = "signal") -> str:
        if net_id in self.nets:
            existing = self.nets[net_id]
            if existing.kind != kind:
                raise NetlistError(
                    f"net {net_id!r} redeclared with kind {kind!r}"
                    f" (was {existing.kind!r})"
                )
            return net_id
        self.nets[net_id] = Net(net_id, kind)
        return net_id

    def const(self, value: int) -> str:
        """Get-or-create the constant rail net for a trit value."""
        if value not in (0, 1, 2):
            raise NetlistError(f"constant nets carry trit values, got {value!r}")
        return self.add_net(f"$const{value}", f"const{value}")

    def clock(self, net_id: str = "clk") -> str:
        return self.add_net(net_id, "clock")

    def add_instance(
        self,
        inst_id: str,
        kind: str,
        conns: dict[str, str],
        params: dict[str, int] | None = None,
    ) -> Instance:
        if inst_id in self._ids:
            raise NetlistError(f"duplicate instance id {inst_id!r}")
        for port, net_id in conns.items():
            if net_id not in self.nets:
                raise NetlistError(
                    f"instance {inst_id!r} port {port!r} bound to unknown net {net_id!r}"
                )
        inst = Instance(inst_id, kind, dict(conns), dict(params or {}))
        self.instances.append(inst)
        self._ids.add(inst_id)
        return inst

    def set_ports(self, inputs: list[str], outputs: list[str]) -> None:
        for net_id in (*inputs, *outputs):
            if net_id not in self.nets:
                raise NetlistError(f"exported port references unknown net {net_id!r}")
        self.inputs = list(inputs)
        self.outputs = list(outputs)

    @property
    def clock_nets(self) -> list[str]:
        return [n.id for n in self.nets.values() if n.kind == "clock"]

    # -- JSON ----------------------------------------------------------------

    def to_dict(self) -> dict:
        insts = []
        for inst in self.instances:
            entry: dict = {"id": inst.id, "kind": inst.kind, "conns": dict(inst.conns)}
            if inst.params:
                entry["params"] = dict(inst.params)
            insts.append(entry)
        return {
            "name": self.name,
            "ports": {"inputs": list(self.inputs), "outputs": list(self.outputs)},
            "nets": [{"id": n.id, "kind": n.kind} for n in self.nets.values()],
            "instances": insts,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Netlist":
        try:
            nl = cls(data["name"])
            for net in data["nets"]:
                nl.add_net(net["id"], net.get("kind", "signal"))
            for inst in data["instances"]:
                nl.add_instance(
                    inst["id"], inst["kind"], inst["conns"], inst.get("params")
                )
            nl.set_ports(data["ports"]["inputs"], data["ports"]["outputs"])
        except (KeyError, TypeError) as exc:
            raise NetlistError(f"malformed netlist JSON: {exc}") from exc
        return nl

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Netlist":
        return cls.from_dict(json.loads(text))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path: str | Path) -> "Netlist":
        return cls.from_json(Path(path).read_text())

    def __repr__(self) -> str:
        return (
            f"Netlist({self.name!r}, nets={len(self.nets)},"
            f" instances={len(self.instances)})"
        )
