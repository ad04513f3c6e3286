"""Compilation of a flat netlist into the array form the kernels execute.

Both kernels (compiled and pure Python) consume the same structure: one
opcode row per combinational primitive in settle order, contribution slots
for transmission gates grouped per driven net, and separate tables for the
clocked threshold gates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..cells import LIBRARY, CellKind
from .elaborate import FlatNetlist

OP_CONST = 0
OP_NTI = 1
OP_PTI = 2
OP_STI = 3
OP_BIN_INV = 4
OP_BIN_AND = 5
OP_BIN_OR = 6
OP_TGATE = 7
OP_DLATCH = 8

_OPS = {
    CellKind.CONST: OP_CONST,
    CellKind.NTI: OP_NTI,
    CellKind.PTI: OP_PTI,
    CellKind.STI_STD: OP_STI,
    CellKind.BIN_INV: OP_BIN_INV,
    CellKind.BIN_AND: OP_BIN_AND,
    CellKind.BIN_OR: OP_BIN_OR,
    CellKind.TGATE: OP_TGATE,
    CellKind.DLATCH: OP_DLATCH,
}

#: Sample marker for a floating (undriven) net.
Z = 3


@dataclass
class Program:
    name: str
    n_nets: int
    init_val: np.ndarray  # int8[N]
    sensed: np.ndarray  # uint8[N]
    clock_net: int
    # combinational instances, settle order
    op: np.ndarray  # int32[M]
    out: np.ndarray  # int32[M]
    in0: np.ndarray  # int32[M]
    in1: np.ndarray  # int32[M]
    aux: np.ndarray  # int32[M]: const value | tgate slot | dlatch slot
    # per transmission-gate contribution slot
    tg_net: np.ndarray  # int32[T] target net
    tg_group_off: np.ndarray  # int32[T] slice start into tg_members
    tg_group_len: np.ndarray  # int32[T]
    tg_members: np.ndarray  # int32[] tgate slots per group, flattened
    n_dlatch: int
    # clocked threshold gates
    tlg_in: np.ndarray  # int32[G,4]
    tlg_out: np.ndarray  # int32[G,2]
    tlg_w: np.ndarray  # int32[G,4]
    in_nets: np.ndarray  # int32[I]
    out_nets: np.ndarray  # int32[O]
    max_passes: int
    comb_index: list[int]  # flat-instance index per opcode row (diagnostics)
    tlg_index: list[int]


class SimState:
    """Mutable per-run state; reset between independent runs."""

    def __init__(self, program: Program):
        p = program
        self.val = p.init_val.copy()
        self.flo = np.zeros(p.n_nets, dtype=np.uint8)
        n_tg = len(p.tg_net)
        self.contrib_val = np.full(n_tg, -1, dtype=np.int8)
        self.contrib_flo = np.zeros(n_tg, dtype=np.uint8)
        self.dl_state = np.zeros(max(p.n_dlatch, 1), dtype=np.int8)
        n_tlg = len(p.tlg_w)
        self.tlg_state = np.zeros(max(n_tlg, 1), dtype=np.int8)
        self.tlg_evald = np.zeros(max(n_tlg, 1), dtype=np.uint8)
        self.float_seen = np.zeros(p.n_nets, dtype=np.uint8)
        self._program = program

    def reset(self) -> None:
        p = self._program
        self.val[:] = p.init_val
        self.flo[:] = 0
        self.contrib_val[:] = -1
        self.contrib_flo[:] = 0
        self.dl_state[:] = 0
        self.tlg_state[:] = 0
        self.tlg_evald[:] = 0
        self.float_seen[:] = 0


def compile_program(flat: FlatNetlist, order: list[int] | None = None) -> Program:
    """Lower a flat netlist to kernel arrays.

    ``order`` overrides the settle order (used by the levelization
    soundness check, which compares against declaration order).
    """
    if order is None:
        order = flat.order
    comb = [i for i in order if flat.instances[i].kind is not CellKind.TLG_RAW]
    tlgs = [i for i in range(len(flat.instances))
            if flat.instances[i].kind is CellKind.TLG_RAW]

    m = len(comb)
    op = np.zeros(m, dtype=np.int32)
    out = np.zeros(m, dtype=np.int32)
    in0 = np.full(m, -1, dtype=np.int32)
    in1 = np.full(m, -1, dtype=np.int32)
    aux = np.full(m, -1, dtype=np.int32)

    tg_slots: list[int] = []  # target net per slot
    tg_slot_of_row: dict[int, int] = {}
    groups: dict[int, list[int]] = {}
    n_dlatch = 0

    for row, idx in enumerate(comb):
        inst = flat.instances[idx]
        code = _OPS[inst.kind]
        op[row] = code
        if inst.kind is CellKind.CONST:
            out[row] = inst.conns["y"]
            aux[row] = inst.params["value"]
        elif inst.kind in (CellKind.NTI, CellKind.PTI, CellKind.STI_STD, CellKind.BIN_INV):
            out[row] = inst.conns["y"]
            in0[row] = inst.conns["a"]
        elif inst.kind in (CellKind.BIN_AND, CellKind.BIN_OR):
            out[row] = inst.conns["y"]
            in0[row] = inst.conns["a"]
            in1[row] = inst.conns["b"]
        elif inst.kind is CellKind.TGATE:
            out[row] = inst.conns["y"]
            in0[row] = inst.conns["a"]
            in1[row] = inst.conns["en"]
            slot = len(tg_slots)
            tg_slots.append(inst.conns["y"])
            tg_slot_of_row[row] = slot
            groups.setdefault(inst.conns["y"], []).append(slot)
            aux[row] = slot
        elif inst.kind is CellKind.DLATCH:
            out[row] = inst.conns["q"]
            in0[row] = inst.conns["d"]
            in1[row] = inst.conns["en"]
            aux[row] = n_dlatch
            n_dlatch += 1
        else:  # pragma: no cover - _OPS covers all non-TLG primitives
            raise AssertionError(inst.kind)

    tg_net = np.array(tg_slots or [0], dtype=np.int32)[: len(tg_slots)]
    tg_group_off = np.zeros(len(tg_slots), dtype=np.int32)
    tg_group_len = np.zeros(len(tg_slots), dtype=np.int32)
    members: list[int] = []
    offsets: dict[int, tuple[int, int]] = {}
    for net, slots in groups.items():
        offsets[net] = (len(members), len(slots))
        members.extend(slots)
    for slot, net in enumerate(tg_slots):
        off, ln = offsets[net]
        tg_group_off[slot] = off
        tg_group_len[slot] = ln
    tg_members = np.array(members or [0], dtype=np.int32)[: len(members)]

    g = len(tlgs)
    tlg_in = np.zeros((g, 4), dtype=np.int32)
    tlg_out = np.zeros((g, 2), dtype=np.int32)
    tlg_w = np.zeros((g, 4), dtype=np.int32)
    for gi, idx in enumerate(tlgs):
        inst = flat.instances[idx]
        tlg_in[gi] = [inst.conns[p] for p in ("a", "b", "c", "d")]
        tlg_out[gi] = [inst.conns["o"], inst.conns["obar"]]
        tlg_w[gi] = [inst.params[p] for p in ("n1", "n2", "n3", "n4")]

    init_val = np.zeros(flat.n_nets, dtype=np.int8)
    for i, kind in enumerate(flat.net_kinds):
        if kind.startswith("const"):
            init_val[i] = int(kind[-1])

    sensed = np.zeros(flat.n_nets, dtype=np.uint8)
    for inst in flat.instances:
        spec = LIBRARY[inst.kind]
        for p in spec.ports:
            if p.direction != "in":
                continue
            if inst.kind is CellKind.TGATE and p.name == "a":
                continue  # an off switch does not sample its data input
            sensed[inst.conns[p.name]] = 1
    for net in flat.outputs:
        sensed[net] = 1

    return Program(
        name=flat.name,
        n_nets=flat.n_nets,
        init_val=init_val,
        sensed=sensed,
        clock_net=flat.clock,
        op=op,
        out=out,
        in0=in0,
        in1=in1,
        aux=aux,
        tg_net=tg_net,
        tg_group_off=tg_group_off,
        tg_group_len=tg_group_len,
        tg_members=tg_members,
        n_dlatch=n_dlatch,
        tlg_in=tlg_in,
        tlg_out=tlg_out,
        tlg_w=tlg_w,
        in_nets=np.array(flat.inputs, dtype=np.int32),
        out_nets=np.array(flat.outputs, dtype=np.int32),
        max_passes=len(comb) + 10,
        comb_index=comb,
        tlg_index=tlgs,
    )
