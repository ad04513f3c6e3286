"""Trace capture and export (CSV and VCD).

Net values are sampled at the end of each settled half-clock phase, two
samples per cycle.  A trit maps to a 2-bit VCD vector (00/01/10); a
floating net is recorded with the explicit Z marker.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Sample value marking a floating net.
Z = 3

_PHASES = ("H", "L")


@dataclass(frozen=True)
class TraceEvent:
    kind: str  # "float" | "contention" | "unevaluated"
    cycle: int
    phase: str
    net: str


@dataclass
class Trace:
    """Per-phase snapshots of every net over a simulation run."""

    net_ids: list[str]
    samples: np.ndarray  # int8[cycles*2, n_nets]; value 3 = Z
    events: list[TraceEvent] = field(default_factory=list)
    float_warnings: int = 0

    @property
    def cycles(self) -> int:
        return len(self.samples) // 2

    def value(self, net: str, cycle: int, phase: str = "L") -> int | str:
        """Sampled value of *net*; returns 'Z' for a floating sample."""
        col = self.net_ids.index(net)
        row = cycle * 2 + _PHASES.index(phase)
        v = int(self.samples[row][col])
        return "Z" if v == Z else v

    def to_csv(self) -> str:
        lines = ["cycle,phase,net,value"]
        for row in range(len(self.samples)):
            cycle, phase = divmod(row, 2)
            for col, net in enumerate(self.net_ids):
                v = int(self.samples[row][col])
                lines.append(
                    f"{cycle},{_PHASES[phase]},{net},{'Z' if v == Z else v}"
                )
        return "\n".join(lines) + "\n"

    def to_vcd(self, top: str = "tritforge") -> str:
        """VCD dump; each trit is a 2-bit vector (0->00, 1->01, 2->10, Z->zz)."""
        out = [
            "$timescale 1ns $end",
            f"$scope module {top} $end",
        ]
        codes = [_vcd_id(i) for i in range(len(self.net_ids))]
        for code, net in zip(codes, self.net_ids):
            out.append(f"$var wire 2 {code} {_vcd_name(net)} $end")
        out.append("$upscope $end")
        out.append("$enddefinitions $end")
        prev: list[int | None] = [None] * len(self.net_ids)
        for row in range(len(self.samples)):
            stamped = False
            for col in range(len(self.net_ids)):
                v = int(self.samples[row][col])
                if v == prev[col]:
                    continue
                if not stamped:
                    out.append(f"#{row}")
                    stamped = True
                bits = "zz" if v == Z else format(v, "02b")
                out.append(f"b{bits} {codes[col]}")
                prev[col] = v
        out.append(f"#{len(self.samples)}")
        return "\n".join(out) + "\n"


_VCD_CHARS = "".join(chr(c) for c in range(33, 127))


def _vcd_id(index: int) -> str:
    chars = []
    index += 1
    while index:
        index, rem = divmod(index - 1, len(_VCD_CHARS))
        chars.append(_VCD_CHARS[rem])
    return "".join(chars)


def _vcd_name(net: str) -> str:
    return net.replace(" ", "_").replace("$", "\\$")


def _word_groups(input_names: list[str]) -> dict[str, list[str]]:
    """Digit-bus groups: base name -> [base0, base1, ...] complete runs."""
    import re

    buckets: dict[str, dict[int, str]] = {}
    for name in input_names:
        m = re.fullmatch(r"([A-Za-z_]+)(\d+)", name)
        if m:
            buckets.setdefault(m.group(1), {})[int(m.group(2))] = name
    groups = {}
    for base, idx in buckets.items():
        width = len(idx)
        if set(idx) == set(range(width)):
            groups[base] = [idx[i] for i in range(width)]
    return groups


def parse_stim_csv(text: str, input_names: list[str]) -> list[dict[str, int]]:
    """Parse per-cycle stimulus: a header of input names, one row per cycle.

    A digit bus (ports x0..x{M-1}) may instead be given as a single column
    named after the base, holding MSB-first ternary word literals with an
    optional ``t`` suffix (``21t``).
    """
    from ..words import TernaryWord

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty stimulus file")
    header = [h.strip() for h in lines[0].split(",")]
    groups = _word_groups(input_names)
    word_cols = {
        base: names
        for base, names in groups.items()
        if base in header and not all(n in header for n in names)
    }
    covered = {n for names in word_cols.values() for n in names}
    missing = [n for n in input_names if n not in header and n not in covered]
    if missing:
        raise ValueError(f"stimulus is missing input columns: {missing}")
    rows = []
    for ln in lines[1:]:
        cells = [c.strip() for c in ln.split(",")]
        if len(cells) != len(header):
            raise ValueError(f"stimulus row {ln!r} does not match header")
        raw = dict(zip(header, cells))
        row: dict[str, int] = {}
        for base, names in word_cols.items():
            word = TernaryWord.parse(raw[base], width=len(names))
            for name, digit in zip(names, word.digits):
                row[name] = digit
        for name in input_names:
            if name not in row:
                row[name] = int(raw[name])
        rows.append(row)
    if not rows:
        raise ValueError("stimulus file has no data rows")
    return rows


def format_stim_csv(rows: list[dict[str, int]], input_names: list[str]) -> str:
    lines = [",".join(input_names)]
    for row in rows:
        lines.append(",".join(str(row[name]) for name in input_names))
    return "\n".join(lines) + "\n"
