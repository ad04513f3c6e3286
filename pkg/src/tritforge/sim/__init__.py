"""Cycle-based netlist simulation with two-phase clock semantics."""

from .backend import active_backend, available_backends
from .elaborate import ElaborationError, FlatNetlist, elaborate
from .engine import Mismatch, SimulationError, VerifyReport, simulate, verify_exhaustive
from .program import Program, SimState, compile_program
from .trace import Trace, TraceEvent, format_stim_csv, parse_stim_csv

__all__ = [
    "ElaborationError",
    "FlatNetlist",
    "Mismatch",
    "Program",
    "SimState",
    "SimulationError",
    "Trace",
    "TraceEvent",
    "VerifyReport",
    "active_backend",
    "available_backends",
    "compile_program",
    "elaborate",
    "format_stim_csv",
    "parse_stim_csv",
    "simulate",
    "verify_exhaustive",
]
