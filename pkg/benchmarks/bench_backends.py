"""Benchmark: compiled simulation kernel versus the pure-Python fallback.

Runs exhaustive-verification style batches (the hot path: thousands of
short simulations) over a few representative circuits and prints per-
backend timing plus the speedup.  Results are also cross-checked so a
mismatch between kernels fails loudly.

Usage: python benchmarks/bench_backends.py [--quick]
"""

from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from tritforge import builders
from tritforge.sim import available_backends, compile_program, elaborate
from tritforge.sim.program import SimState


def _batch(kernel, program, stim_rows, cycles):
    handle = kernel.prepare(program)
    state = SimState(program)
    warn = np.zeros((4, 3), dtype=np.int32)
    outs = []
    stim = np.zeros((cycles, stim_rows.shape[1]), dtype=np.int8)
    for row in stim_rows:
        state.reset()
        stim[:] = row
        status, _, _, _ = kernel.run(handle, state, stim, None, warn)
        assert status == 0
        outs.append([int(state.val[n]) for n in program.out_nets])
    return outs


def bench_circuit(name, netlist, cycles, combos, backends):
    flat = elaborate(netlist)
    program = compile_program(flat)
    n_in = len(flat.inputs)
    if combos == "exhaustive":
        rows = np.array(
            list(itertools.product((0, 1, 2), repeat=n_in)), dtype=np.int8
        )
    else:
        rng = np.random.default_rng(7)
        rows = rng.integers(0, 3, size=(combos, n_in), dtype=np.int8)

    results = {}
    times = {}
    for bname, kernel in backends.items():
        t0 = time.perf_counter()
        results[bname] = _batch(kernel, program, rows, cycles)
        times[bname] = time.perf_counter() - t0

    baseline = results["python"]
    for bname, res in results.items():
        if res != baseline:
            raise SystemExit(f"kernel mismatch on {name}: {bname} != python")

    cells = len(flat.instances)
    line = f"{name:<18} {cells:>5} cells {len(rows):>6} runs"
    for bname in backends:
        line += f"  {bname}: {times[bname]:8.3f}s"
    if "compiled" in times:
        line += f"  speedup: {times['python'] / times['compiled']:6.1f}x"
    print(line)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller batches")
    args = ap.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("note: compiled kernel not available; timing pure Python only")

    n = 200 if args.quick else 2000
    cases = [
        ("xor_tlg", builders.build_circuit("xor", variant="TLG"), 2, "exhaustive"),
        ("tha_std", builders.build_circuit("tha", variant="STD"), 2, "exhaustive"),
        ("adder3_tlg", builders.build_circuit("adder", 3, "TLG"), 5, "exhaustive"),
        ("wordcomp8_tlg", builders.build_circuit("wordcomp", 8, "TLG"), 3, n),
        ("adder8_std", builders.build_circuit("adder", 8, "STD"), 2, n),
        ("sub8_tlg", builders.build_circuit("sub", 8, "TLG"), 11, n // 2),
    ]
    for name, netlist, cycles, combos in cases:
        bench_circuit(name, netlist, cycles, combos, backends)


if __name__ == "__main__":
    main()
