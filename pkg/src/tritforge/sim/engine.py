"""Deterministic cycle-based simulation and exhaustive verification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..netlist import Netlist
from . import backend
from .elaborate import FlatNetlist, elaborate
from .program import Program, SimState, compile_program
from .trace import Trace, TraceEvent

_WARN_CAP = 64


class SimulationError(RuntimeError):
    """Contention or non-convergence during simulation."""

    def __init__(self, message: str, net: str | None = None, cycle: int = -1):
        super().__init__(message)
        self.net = net
        self.cycle = cycle


def _as_flat(circuit: Netlist | FlatNetlist) -> FlatNetlist:
    if isinstance(circuit, FlatNetlist):
        return circuit
    return elaborate(circuit)


def _handle(program: Program):
    k = backend.kernel()
    cached = getattr(program, "_handle", None)
    if cached is not None and cached[0] is k:
        return cached[1]
    handle = k.prepare(program)
    program._handle = (k, handle)
    return handle


def _run(
    program: Program,
    state: SimState,
    stim: np.ndarray,
    samples: np.ndarray | None,
    flat: FlatNetlist,
):
    warn_rows = np.zeros((_WARN_CAP, 3), dtype=np.int32)
    k = backend.kernel()
    status, err_a, err_b, n_warn = k.run(_handle(program), state, stim, samples, warn_rows)
    if status == backend.STATUS_CONTENTION:
        cycle, phase = divmod(err_b, 2)
        net = flat.net_ids[err_a]
        raise SimulationError(
            f"driver contention on net {net!r} at cycle {cycle} phase"
            f" {'HL'[phase]} of {flat.name!r}",
            net=net,
            cycle=cycle,
        )
    if status == backend.STATUS_OSCILLATION:
        cycle, phase = divmod(err_b, 2)
        raise SimulationError(
            f"no settle fixpoint (oscillation) at cycle {cycle} phase"
            f" {'HL'[phase]} of {flat.name!r}",
            cycle=cycle,
        )
    return warn_rows, n_warn


def _stim_array(
    flat: FlatNetlist, stimulus: list[dict[str, int]], cycles: int | None
) -> np.ndarray:
    names = flat.input_names()
    if cycles is None:
        cycles = len(stimulus)
    if cycles > 0 and not stimulus:
        raise ValueError("stimulus required for a non-zero cycle count")
    rows = np.zeros((cycles, len(names)), dtype=np.int8)
    for c in range(cycles):
        row = stimulus[min(c, len(stimulus) - 1)]  # last row holds
        for i, name in enumerate(names):
            if name not in row:
                raise ValueError(f"stimulus cycle {c} missing input {name!r}")
            v = row[name]
            if v not in (0, 1, 2):
                raise ValueError(f"stimulus value for {name!r} must be a trit, got {v!r}")
            rows[c][i] = v
    return rows


def simulate(
    circuit: Netlist | FlatNetlist,
    stimulus: list[dict[str, int]],
    cycles: int | None = None,
) -> Trace:
    """Run the two-phase clock for *cycles* cycles and capture a full trace.

    Each stimulus row assigns every input port for one cycle; when *cycles*
    exceeds the stimulus length the last row holds.  Identical stimulus
    yields a bit-identical trace.
    """
    flat = _as_flat(circuit)
    program = compile_program(flat)
    stim = _stim_array(flat, stimulus, cycles)
    samples = np.zeros((len(stim) * 2, flat.n_nets), dtype=np.int8)
    state = SimState(program)
    warn_rows, n_warn = _run(program, state, stim, samples, flat)

    events = [
        TraceEvent("float", int(c), "HL"[int(p)], flat.net_ids[int(n)])
        for c, p, n in warn_rows[: min(n_warn, _WARN_CAP)]
    ]
    if len(stim) > 0:
        # phase-H samples of cycle 0 expose clocked TLG outputs before their
        # first capture; annotate any that are exported
        tlg_driven = {int(n) for pair in program.tlg_out for n in pair}
        for net in flat.outputs:
            if net in tlg_driven:
                events.append(TraceEvent("unevaluated", 0, "H", flat.net_ids[net]))
    return Trace(
        net_ids=list(flat.net_ids),
        samples=samples,
        events=events,
        float_warnings=int(n_warn),
    )


@dataclass
class Mismatch:
    inputs: dict[str, int]
    expected: dict[str, int]
    got: dict[str, int]


@dataclass
class VerifyReport:
    """Outcome of exhaustively checking a netlist against an oracle."""

    name: str
    total: int
    mismatches: list[Mismatch] = field(default_factory=list)
    float_warnings: int = 0
    float_nets: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches and self.float_warnings == 0

    def summary(self) -> str:
        ok = self.total - len(self.mismatches)
        status = "PASS" if self.passed else "FAIL"
        extra = f", {self.float_warnings} float warnings" if self.float_warnings else ""
        return f"{status} {self.name}: {ok}/{self.total} match{extra}"


def verify_exhaustive(
    circuit: Netlist | FlatNetlist,
    oracle: Callable[[dict[str, int]], dict[str, int]],
    settle_cycles: int = 2,
    max_inputs: int = 10,
) -> VerifyReport:
    """Drive every input combination and compare settled outputs to *oracle*.

    Each combination runs from power-on for *settle_cycles* cycles (inputs
    held), and outputs are read after the final clock-low settle.  The
    oracle receives the input assignment keyed by port name and returns
    expected values for any subset of output ports.
    """
    flat = _as_flat(circuit)
    in_names = flat.input_names()
    out_names = flat.output_names()
    if len(in_names) > max_inputs:
        raise ValueError(
            f"{flat.name!r} has {len(in_names)} inputs; exhaustive cap is {max_inputs}"
        )
    if settle_cycles < 1:
        raise ValueError("settle_cycles must be >= 1")
    program = compile_program(flat)
    state = SimState(program)
    report = VerifyReport(name=flat.name, total=0)
    float_nets: set[str] = set()

    stim = np.zeros((settle_cycles, len(in_names)), dtype=np.int8)
    for combo in itertools.product((0, 1, 2), repeat=len(in_names)):
        report.total += 1
        state.reset()
        stim[:] = combo
        warn_rows, n_warn = _run(program, state, stim, None, flat)
        if n_warn:
            report.float_warnings += n_warn
            for _, _, n in warn_rows[: min(n_warn, _WARN_CAP)]:
                float_nets.add(flat.net_ids[int(n)])
        inputs = dict(zip(in_names, combo))
        expected = oracle(dict(inputs))
        got = {name: int(state.val[net]) for name, net in zip(out_names, flat.outputs)}
        bad = {k: v for k, v in expected.items() if got.get(k) != v}
        if bad:
            report.mismatches.append(Mismatch(inputs, expected, got))
    report.float_nets = sorted(float_nets)
    return report


def verify_random(
    circuit: Netlist | FlatNetlist,
    oracle: Callable[[dict[str, int]], dict[str, int]],
    settle_cycles: int = 2,
    samples: int = 1000,
    seed: int = 0,
) -> VerifyReport:
    """Like :func:`verify_exhaustive` but over seeded random input samples,
    for circuits whose input space is too large to enumerate."""
    import random

    flat = _as_flat(circuit)
    in_names = flat.input_names()
    out_names = flat.output_names()
    program = compile_program(flat)
    state = SimState(program)
    rng = random.Random(seed)
    report = VerifyReport(name=f"{flat.name} ({samples} samples)", total=0)
    float_nets: set[str] = set()

    stim = np.zeros((settle_cycles, len(in_names)), dtype=np.int8)
    for _ in range(samples):
        combo = tuple(rng.randrange(3) for _ in in_names)
        report.total += 1
        state.reset()
        stim[:] = combo
        warn_rows, n_warn = _run(program, state, stim, None, flat)
        if n_warn:
            report.float_warnings += n_warn
            for _, _, n in warn_rows[: min(n_warn, _WARN_CAP)]:
                float_nets.add(flat.net_ids[int(n)])
        inputs = dict(zip(in_names, combo))
        expected = oracle(dict(inputs))
        got = {name: int(state.val[net]) for name, net in zip(out_names, flat.outputs)}
        bad = {k: v for k, v in expected.items() if got.get(k) != v}
        if bad:
            report.mismatches.append(Mismatch(inputs, expected, got))
    report.float_nets = sorted(float_nets)
    return report
