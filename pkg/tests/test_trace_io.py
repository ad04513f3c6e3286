"""Trace export formats: CSV rows, VCD structure, stimulus parsing."""

import pytest

from tritforge.builders import build_circuit
from tritforge.sim import parse_stim_csv, format_stim_csv, simulate


def test_csv_export_shape():
    nl = build_circuit("sti", variant="TLG")
    trace = simulate(nl, [{"x": 0}, {"x": 2}])
    csv = trace.to_csv()
    lines = csv.splitlines()
    assert lines[0] == "cycle,phase,net,value"
    # two cycles, two phases, every net sampled each phase
    assert len(lines) == 1 + 2 * 2 * len(trace.net_ids)
    assert lines[1].startswith("0,H,")
    assert any(ln.startswith("1,L,y,") for ln in lines)


def test_vcd_export_structure():
    nl = build_circuit("xor", variant="TLG")
    trace = simulate(nl, [{"x": 0, "y": 0}, {"x": 1, "y": 2}])
    vcd = trace.to_vcd("xor_tlg")
    assert "$timescale 1ns $end" in vcd
    assert "$scope module xor_tlg $end" in vcd
    assert "$var wire 2 " in vcd
    assert "$enddefinitions $end" in vcd
    # two-bit vectors for trits
    assert "b10 " in vcd  # level 2
    assert "b00 " in vcd  # level 0
    assert "#0" in vcd and "#3" in vcd


def test_vcd_marks_floating_as_z():
    from tritforge.netlist import Netlist

    nl = Netlist("floaty")
    nl.add_net("en")
    nl.add_net("y")
    nl.add_instance("g", "TGATE", {"a": nl.const(2), "en": "en", "y": "y"})
    nl.set_ports(["en"], ["y"])
    trace = simulate(nl, [{"en": 2}, {"en": 0}])
    assert "bzz " in trace.to_vcd()
    assert ",Z" in trace.to_csv()


def test_trace_deterministic_bytes():
    nl = build_circuit("tha", variant="TLG")
    stim = [{"x": x, "y": y} for x in range(3) for y in range(3)]
    a = simulate(nl, stim)
    b = simulate(nl, stim)
    assert a.to_csv() == b.to_csv()
    assert a.to_vcd() == b.to_vcd()


def test_stim_csv_roundtrip():
    rows = [{"x": 0, "y": 2}, {"x": 1, "y": 1}]
    text = format_stim_csv(rows, ["x", "y"])
    assert parse_stim_csv(text, ["x", "y"]) == rows
    # extra columns are fine, order-insensitive
    text2 = "y,x\n2,0\n"
    assert parse_stim_csv(text2, ["x", "y"]) == [{"x": 0, "y": 2}]


def test_stim_csv_errors():
    with pytest.raises(ValueError, match="missing input"):
        parse_stim_csv("x\n0\n", ["x", "y"])
    with pytest.raises(ValueError, match="empty"):
        parse_stim_csv("", ["x"])
    with pytest.raises(ValueError, match="does not match"):
        parse_stim_csv("x,y\n0\n", ["x", "y"])
    with pytest.raises(ValueError, match="no data"):
        parse_stim_csv("x,y\n", ["x", "y"])


def test_stimulus_value_validation():
    nl = build_circuit("sti", variant="TLG")
    with pytest.raises(ValueError, match="trit"):
        simulate(nl, [{"x": 5}])
    with pytest.raises(ValueError, match="missing input"):
        simulate(nl, [{}], cycles=1)


def test_stim_csv_word_literals():
    # digit buses accept MSB-first word literals in a single column
    names = ["x0", "x1", "y0", "y1"]
    rows = parse_stim_csv("x,y\n21t,12\n00,22t\n", names)
    assert rows[0] == {"x0": 1, "x1": 2, "y0": 2, "y1": 1}
    assert rows[1] == {"x0": 0, "x1": 0, "y0": 2, "y1": 2}
    # mixing one bus column with explicit digits of another is fine
    rows = parse_stim_csv("x,y0,y1\n21t,2,1\n", names)
    assert rows[0] == {"x0": 1, "x1": 2, "y0": 2, "y1": 1}
    with pytest.raises(Exception, match="literal|wider"):
        parse_stim_csv("x,y\n221t,12\n", names)


def test_word_literal_stimulus_drives_adder():
    nl = build_circuit("adder", 2, "STD")
    stim = parse_stim_csv("x,y\n12t,11t\n", ["x0", "x1", "y0", "y1"])
    trace = simulate(nl, stim, cycles=2)
    # 5 + 4 = 9: sum digits 00, carry out 1
    assert trace.value("s0", 1, "L") == 0
    assert trace.value("s1", 1, "L") == 0
    assert trace.value("cout", 1, "L") == 1


def test_unevaluated_tlg_outputs_annotated():
    nl = build_circuit("comp1", variant="TLG")
    trace = simulate(nl, [{"x": 1, "y": 1}])
    pre_capture = [ev for ev in trace.events if ev.kind == "unevaluated"]
    assert {ev.net for ev in pre_capture} == {"o", "obar"}
    assert all(ev.cycle == 0 and ev.phase == "H" for ev in pre_capture)
