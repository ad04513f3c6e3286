"""Command-line interface.

Subcommands: ``cells`` (catalog dump), ``build`` (emit catalog netlists),
``synth`` (truth table to netlist), ``sim`` (trace a netlist), ``verify``
(exhaustive checks), ``report`` (cost comparison).  Exit codes are stable:
0 success, 1 verification mismatch or simulation failure, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import builders, cost, synth
from .cells import catalog
from .netlist import Netlist, NetlistError
from .sim import (
    SimulationError,
    elaborate,
    parse_stim_csv,
    simulate,
    verify_exhaustive,
)
from .sim.engine import verify_random

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


def _require_file(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    return p


def _load_costs(path: str | None) -> cost.CostModel:
    path = path or os.environ.get("TRITFORGE_COSTS")
    if path:
        return cost.CostModel.load(_require_file(path))
    return cost.default_cost_model()


def _cmd_cells(args) -> int:
    model = cost.default_cost_model()
    entries = catalog()
    for e in entries:
        entry = model.entry(e["kind"])
        e["devices"] = entry.devices
        e["costs"] = {
            "devices": entry.devices,
            "delay_units": cost.fmt_quantity(entry.delay_units),
            "toggle_energy": cost.fmt_quantity(entry.toggle_energy),
            "leakage": cost.fmt_quantity(entry.leakage),
        }
    if args.json:
        print(json.dumps(entries, indent=2))
        return EXIT_OK
    header = f"{'kind':<10} {'clocked':<8} {'primitive':<10} {'devices':<8} ports"
    print(header)
    for e in entries:
        ports = ", ".join(
            f"{p['name']}:{p['direction']}{'*' if p['clock'] else ''}"
            for p in e["ports"]
        )
        print(
            f"{e['kind']:<10} {str(e['clocked']).lower():<8}"
            f" {str(e['primitive']).lower():<10} {e['devices']:<8} {ports}"
        )
    return EXIT_OK


def _cmd_build(args) -> int:
    nl = builders.build_circuit(args.circuit, args.width, args.variant)
    out = Path(args.out) if args.out else Path(f"{nl.name}.json")
    nl.save(out)
    print(f"wrote {out}")
    return EXIT_OK


def _cmd_synth(args) -> int:
    text = _require_file(args.table).read_text()
    table = synth.parse_table_text(text)
    nl, networks = synth.synthesize(table, name=Path(args.table).stem)
    simplified = synth.simplify_terms(networks)
    out = Path(args.out) if args.out else Path(f"{nl.name}_synth.json")
    nl.save(out)
    print(f"wrote {out}")
    print(f"arity {table.arity}, {3 ** table.arity} rows")
    for raw, simp in zip(networks, simplified):
        print(
            f"level {raw.level}: {len(raw.terms)} minterms"
            f" -> {len(simp.terms)} terms, {simp.literal_count()} literals"
        )
        for term in simp.sorted_terms():
            cond = " & ".join(f"x{var}={lev}" for var, lev in term) or "(always)"
            print(f"  {cond}")
    return EXIT_OK


def _cmd_sim(args) -> int:
    nl = Netlist.load(_require_file(args.netlist))
    flat = elaborate(nl)
    stim = parse_stim_csv(_require_file(args.stim).read_text(), flat.input_names())
    trace = simulate(flat, stim, cycles=args.cycles)
    if args.trace:
        out = Path(args.trace)
        if out.suffix.lower() == ".vcd":
            out.write_text(trace.to_vcd(nl.name))
        else:
            out.write_text(trace.to_csv())
        print(f"wrote {out}")
    print(
        f"simulated {trace.cycles} cycles, {len(trace.net_ids)} nets,"
        f" {trace.float_warnings} float warnings"
    )
    for ev in trace.events[:10]:
        print(f"  warning: {ev.kind} on {ev.net} at cycle {ev.cycle}{ev.phase}")
    return EXIT_OK


def _verify_one(name: str, variant: str, width: int | None, seed: int) -> tuple[str, bool]:
    entry = builders.CATALOG[name]
    w = width or entry.default_width
    nl = builders.build_circuit(name, w, variant)
    oracle = builders.oracle_for(name, w, variant)
    settle = builders.settle_cycles_for(name, w, variant)
    flat = elaborate(nl)
    if len(flat.inputs) <= 10:
        report = verify_exhaustive(flat, oracle, settle_cycles=settle)
    else:
        report = verify_random(flat, oracle, settle_cycles=settle, samples=1000, seed=seed)
    return report.summary(), report.passed


def _cmd_verify(args) -> int:
    if args.netlist:
        if not args.oracle:
            raise UsageError("--netlist requires --oracle <circuit-name>")
        nl = Netlist.load(_require_file(args.netlist))
        oracle = builders.oracle_for(args.oracle, args.width, args.variant)
        settle = args.settle or builders.settle_cycles_for(
            args.oracle, args.width, args.variant
        )
        report = verify_exhaustive(nl, oracle, settle_cycles=settle)
        print(report.summary())
        for mm in report.mismatches[:20]:
            print(f"  mismatch at {mm.inputs}: expected {mm.expected}, got {mm.got}")
        return EXIT_OK if report.passed else EXIT_VERIFY

    if args.all:
        failed = False
        for name, entry in builders.CATALOG.items():
            for variant in entry.variants:
                line, ok = _verify_one(name, variant, args.width, args.seed)
                print(f"{name:<9} {variant:<4} {line}")
                failed = failed or not ok
        return EXIT_VERIFY if failed else EXIT_OK

    if args.circuit:
        line, ok = _verify_one(args.circuit, args.variant, args.width, args.seed)
        print(line)
        return EXIT_OK if ok else EXIT_VERIFY

    raise UsageError("verify needs --all, --circuit NAME, or --netlist FILE")


def _cmd_report(args) -> int:
    costs = _load_costs(args.costs)
    paths = [p for p in args.variants.split(",") if p]
    if not paths:
        raise UsageError("--variants needs at least one netlist file")
    for p in paths:
        _require_file(p)
    stim_path = _require_file(args.stim)
    report = None
    for p in paths:
        nl = Netlist.load(p)
        flat = elaborate(nl)
        stim = parse_stim_csv(stim_path.read_text(), flat.input_names())
        one = cost.measure(flat, stim, costs, name=nl.name, cycles=args.cycles)
        report = one if report is None else report.merged(one)
    print(report.render(args.format), end="")
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tritforge",
        description="Ternary threshold-logic circuits: build, simulate, verify, report.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cells", help="dump the cell catalog")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_cells)

    p = sub.add_parser("build", help="emit a catalog circuit as netlist JSON")
    p.add_argument("circuit")
    p.add_argument("--variant", default="TLG", choices=["TLG", "STD", "tlg", "std"])
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--out", "-o", default=None)
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("synth", help="synthesize a truth table file")
    p.add_argument("--table", required=True)
    p.add_argument("--out", "-o", default=None)
    p.set_defaults(fn=_cmd_synth)

    p = sub.add_parser("sim", help="simulate a netlist under a stimulus file")
    p.add_argument("--netlist", required=True)
    p.add_argument("--stim", required=True)
    p.add_argument("--cycles", type=int, default=None)
    p.add_argument("--trace", default=None, help="output file (.vcd or .csv)")
    p.set_defaults(fn=_cmd_sim)

    p = sub.add_parser("verify", help="exhaustively verify circuits against oracles")
    p.add_argument("--all", action="store_true")
    p.add_argument("--circuit", default=None)
    p.add_argument("--netlist", default=None)
    p.add_argument("--oracle", default=None)
    p.add_argument("--variant", default="TLG", choices=["TLG", "STD", "tlg", "std"])
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--settle", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("report", help="cost comparison for netlist variants")
    p.add_argument("--variants", required=True, help="comma-separated netlist files")
    p.add_argument("--stim", required=True)
    p.add_argument("--costs", default=None)
    p.add_argument("--cycles", type=int, default=None)
    p.add_argument("--format", default="text", choices=["text", "md", "csv"])
    p.set_defaults(fn=_cmd_report)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if hasattr(args, "variant"):
        args.variant = args.variant.upper()
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except builders.CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (synth.TruthTableError, NetlistError, cost.CostError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
