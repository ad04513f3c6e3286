"""Netlist elaboration: expansion to primitives, validation, levelization.

Composite instances are spliced in recursively (internal nets get a
``parent/`` prefix, constant rails merge into the canonical ``$constN``
nets).  The flattened result is validated (port binding, driver rules,
single clock domain) and ordered for the settle loop: strongly connected
components are sorted topologically, and any component that is a real
cycle must contain a transmission gate or a latch, otherwise it is a
combinational loop and elaboration fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..cells import LIBRARY, CellKind, CellSpec
from ..netlist import CONST_NET_VALUE, Netlist
from ..tlg import TlgWeightError, TlgWeights

_MAX_DEPTH = 50


class ElaborationError(ValueError):
    """Structural problem found while flattening a netlist."""


@dataclass
class FlatInstance:
    id: str
    kind: CellKind
    conns: dict[str, int]
    params: dict[str, int]


@dataclass
class FlatNetlist:
    """Primitive-only netlist with resolved indices and evaluation order."""

    name: str
    net_ids: list[str]
    net_kinds: list[str]
    instances: list[FlatInstance]
    inputs: list[int]
    outputs: list[int]
    clock: int  # net index, -1 when the circuit is unclocked
    order: list[int] = field(default_factory=list)  # settle order, no TLGs
    net_index: dict[str, int] = field(default_factory=dict)

    @property
    def n_nets(self) -> int:
        return len(self.net_ids)

    def input_names(self) -> list[str]:
        return [self.net_ids[i] for i in self.inputs]

    def output_names(self) -> list[str]:
        return [self.net_ids[i] for i in self.outputs]


def _spec(kind_name: str) -> CellSpec:
    try:
        kind = CellKind(kind_name)
    except ValueError:
        raise ElaborationError(f"unknown cell kind {kind_name!r}") from None
    return LIBRARY[kind]


def _expand(
    nl: Netlist,
    prefix: str,
    net_map: dict[str, str],
    out_nets: dict[str, str],
    out_insts: list[tuple[str, CellSpec, dict[str, str], dict[str, int]]],
    expand_reference: bool,
    depth: int,
) -> None:
    if depth > _MAX_DEPTH:
        raise ElaborationError(f"expansion depth exceeded at {prefix!r}")
    for net in nl.nets.values():
        if net.id in net_map:
            continue
        if net.kind.startswith("const"):
            flat_id = f"$const{CONST_NET_VALUE[net.kind]}"
        else:
            flat_id = prefix + net.id
        net_map[net.id] = flat_id
        if flat_id not in out_nets:
            out_nets[flat_id] = net.kind

    for inst in nl.instances:
        spec = _spec(inst.kind)
        flat_id = prefix + inst.id
        port_names = {p.name for p in spec.ports}
        for port in inst.conns:
            if port not in port_names:
                raise ElaborationError(
                    f"instance {flat_id!r} ({spec.kind.value}) has no port {port!r}"
                )
        missing = port_names - set(inst.conns)
        if missing:
            raise ElaborationError(
                f"instance {flat_id!r} ({spec.kind.value}) leaves ports unbound:"
                f" {sorted(missing)}"
            )
        bound = {port: net_map[net] for port, net in inst.conns.items()}

        expandable = spec.structure_factory is not None and (
            not spec.primitive or expand_reference
        )
        if expandable:
            structure = spec.structure
            inner_map = {}
            for p in spec.ports:
                inner_map[p.name] = bound[p.name]
            _expand(
                structure,
                flat_id + "/",
                inner_map,
                out_nets,
                out_insts,
                expand_reference,
                depth + 1,
            )
        else:
            if not spec.primitive:
                raise ElaborationError(
                    f"cell kind {spec.kind.value} has no structural expansion"
                )
            for pname in spec.param_names:
                if pname not in inst.params:
                    raise ElaborationError(
                        f"instance {flat_id!r} ({spec.kind.value}) missing parameter"
                        f" {pname!r}"
                    )
            out_insts.append((flat_id, spec, bound, dict(inst.params)))


def _order_instances(flat: FlatNetlist) -> list[int]:
    """Topological order of SCCs; genuine cycles must include a TGATE or latch."""
    n = len(flat.instances)
    drivers: dict[int, list[int]] = {}
    for idx, inst in enumerate(flat.instances):
        if inst.kind is CellKind.TLG_RAW:
            continue
        spec = LIBRARY[inst.kind]
        for p in spec.ports:
            if p.direction == "out":
                drivers.setdefault(inst.conns[p.name], []).append(idx)

    succ: list[list[int]] = [[] for _ in range(n)]
    pred_count = [0] * n
    edges: set[tuple[int, int]] = set()
    for idx, inst in enumerate(flat.instances):
        spec = LIBRARY[inst.kind]
        for p in spec.ports:
            if p.direction != "in":
                continue
            for d in drivers.get(inst.conns[p.name], ()):
                if (d, idx) not in edges:
                    edges.add((d, idx))
                    succ[d].append(idx)
                    pred_count[idx] += 1

    # Iterative Tarjan SCC (recursion-free for large flat netlists).
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index_of[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            node, pi = work[-1]
            if pi == 0:
                index_of[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = True
            advanced = False
            while pi < len(succ[node]):
                nxt = succ[node][pi]
                pi += 1
                if index_of[nxt] == -1:
                    work[-1] = (node, pi)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if on_stack[nxt]:
                    low[node] = min(low[node], index_of[nxt])
            if advanced:
                continue
            work.pop()
            if low[node] == index_of[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == node:
                        break
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])

    # Tarjan emits SCCs in reverse topological order.
    order: list[int] = []
    breakers = (CellKind.TGATE, CellKind.DLATCH)
    for comp in reversed(sccs):
        members = sorted(comp)
        is_cycle = len(members) > 1 or (members[0], members[0]) in edges
        if is_cycle and not any(
            flat.instances[m].kind in breakers for m in members
        ):
            names = [flat.instances[m].id for m in members]
            raise ElaborationError(f"combinational loop through {names}")
        order.extend(members)

    order.extend(
        idx for idx, inst in enumerate(flat.instances) if inst.kind is CellKind.TLG_RAW
    )
    return order


def elaborate(netlist: Netlist, expand_reference: bool = False) -> FlatNetlist:
    """Flatten to primitives and compute the evaluation order.

    ``expand_reference`` additionally expands primitives that carry a
    reference structure (STI_STD, DLATCH), which the equivalence tests use.
    """
    out_nets: dict[str, str] = {}
    out_insts: list[tuple[str, CellSpec, dict[str, str], dict[str, int]]] = []
    top_map: dict[str, str] = {}
    _expand(netlist, "", top_map, out_nets, out_insts, expand_reference, 0)

    net_ids = list(out_nets)
    net_kinds = [out_nets[i] for i in net_ids]
    index = {nid: i for i, nid in enumerate(net_ids)}

    instances = [
        FlatInstance(iid, spec.kind, {p: index[n] for p, n in conns.items()}, params)
        for iid, spec, conns, params in out_insts
    ]

    clocks = [i for i, k in enumerate(net_kinds) if k == "clock"]
    if len(clocks) > 1:
        names = [net_ids[i] for i in clocks]
        raise ElaborationError(f"multiple clock nets are not supported: {names}")
    clock = clocks[0] if clocks else -1

    flat = FlatNetlist(
        name=netlist.name,
        net_ids=net_ids,
        net_kinds=net_kinds,
        instances=instances,
        inputs=[index[top_map[n]] for n in netlist.inputs],
        outputs=[index[top_map[n]] for n in netlist.outputs],
        clock=clock,
        net_index=index,
    )
    _validate(flat)
    flat.order = _order_instances(flat)
    return flat


def _validate(flat: FlatNetlist) -> None:
    strong: dict[int, list[str]] = {}
    switched: dict[int, list[str]] = {}
    consumed: set[int] = set()
    for inst in flat.instances:
        spec = LIBRARY[inst.kind]
        for p in spec.ports:
            net = inst.conns[p.name]
            if p.direction == "out":
                bucket = switched if inst.kind is CellKind.TGATE else strong
                bucket.setdefault(net, []).append(inst.id)
            else:
                consumed.add(net)
        if inst.kind is CellKind.TLG_RAW:
            clk = inst.conns["clk"]
            if flat.net_kinds[clk] != "clock":
                raise ElaborationError(
                    f"TLG {inst.id!r} clock port must bind a clock net,"
                    f" got {flat.net_ids[clk]!r}"
                )
            try:
                TlgWeights(*(inst.params[p] for p in ("n1", "n2", "n3", "n4")))
            except TlgWeightError as exc:
                raise ElaborationError(f"TLG {inst.id!r}: {exc}") from None

    undrivable = {"clock"}
    for net, who in list(strong.items()) + list(switched.items()):
        kind = flat.net_kinds[net]
        if kind.startswith("const") or kind in undrivable:
            raise ElaborationError(
                f"net {flat.net_ids[net]!r} ({kind}) must not be driven (by {who})"
            )

    for net in flat.inputs:
        if net in strong or net in switched:
            raise ElaborationError(
                f"input net {flat.net_ids[net]!r} is also driven internally"
            )

    for net, who in strong.items():
        if len(who) > 1:
            raise ElaborationError(
                f"net {flat.net_ids[net]!r} has multiple fixed drivers: {who}"
            )
        if net in switched:
            raise ElaborationError(
                f"net {flat.net_ids[net]!r} mixes fixed and switched drivers"
            )

    driven = set(strong) | set(switched) | set(flat.inputs)
    for net in sorted(consumed | set(flat.outputs)):
        kind = flat.net_kinds[net]
        if kind.startswith("const") or kind == "clock":
            continue
        if net not in driven:
            raise ElaborationError(f"net {flat.net_ids[net]!r} is consumed but never driven")
