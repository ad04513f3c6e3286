"""Netlist JSON schema: round trips, stable field order, validation."""

import json

import pytest

from tritforge.builders import build_circuit
from tritforge.netlist import Netlist, NetlistError


def test_roundtrip_preserves_structure(tmp_path):
    nl = build_circuit("wordcomp", 2, "TLG")
    path = tmp_path / "wc.json"
    nl.save(path)
    loaded = Netlist.load(path)
    assert loaded.to_dict() == nl.to_dict()
    assert loaded.inputs == nl.inputs and loaded.outputs == nl.outputs


def test_json_field_order_stable():
    nl = build_circuit("tha", variant="TLG")
    d = nl.to_dict()
    assert list(d) == ["name", "ports", "nets", "instances"]
    assert list(d["ports"]) == ["inputs", "outputs"]
    inst = d["instances"][0]
    assert list(inst)[:3] == ["id", "kind", "conns"]
    # byte-identical on repeat
    assert nl.to_json() == nl.to_json()
    assert nl.to_json().endswith("\n")


def test_params_serialized_for_tlg():
    nl = build_circuit("comp1", variant="TLG")
    from tritforge.sim import elaborate

    flat = elaborate(nl)
    data = json.loads(nl.to_json())
    # the hierarchical form has no raw TLG, but rebuilding a flat netlist
    # by hand keeps weights in params
    nl2 = Netlist("raw")
    for n in ("x", "y", "o", "ob"):
        nl2.add_net(n)
    clk = nl2.clock("clk")
    nl2.add_instance(
        "t", "TLG_RAW",
        {"a": "x", "b": nl2.const(0), "c": nl2.const(0), "d": "y",
         "clk": clk, "o": "o", "obar": "ob"},
        {"n1": 1, "n2": 0, "n3": 0, "n4": 1},
    )
    nl2.set_ports(["x", "y"], ["o"])
    again = Netlist.from_json(nl2.to_json())
    assert again.instances[0].params == {"n1": 1, "n2": 0, "n3": 0, "n4": 1}
    assert flat is not None and data["name"] == "comp1_tlg"


def test_duplicate_instance_rejected():
    nl = Netlist("dup")
    nl.add_net("a")
    nl.add_net("y")
    nl.add_instance("u0", "NTI", {"a": "a", "y": "y"})
    with pytest.raises(NetlistError, match="duplicate"):
        nl.add_instance("u0", "PTI", {"a": "a", "y": "y"})


def test_unknown_net_rejected():
    nl = Netlist("miss")
    nl.add_net("a")
    with pytest.raises(NetlistError, match="unknown net"):
        nl.add_instance("u0", "NTI", {"a": "a", "y": "nope"})
    with pytest.raises(NetlistError, match="unknown net"):
        nl.set_ports(["nope"], [])


def test_net_kind_conflicts():
    nl = Netlist("kinds")
    nl.add_net("a", "signal")
    with pytest.raises(NetlistError, match="redeclared"):
        nl.add_net("a", "clock")
    with pytest.raises(NetlistError, match="unknown net kind"):
        nl.add_net("b", "tri-state")
    with pytest.raises(NetlistError):
        nl.const(7)


def test_malformed_json_rejected():
    with pytest.raises(NetlistError, match="malformed"):
        Netlist.from_dict({"name": "x", "nets": []})  # no ports/instances
