"""Structural word circuits against the behavioral word operations."""

import pytest

from tritforge.builders import (
    build_adder,
    build_sub,
    build_wordcomp,
    oracle_for,
    settle_cycles_for,
)
from tritforge.sim import verify_exhaustive
from tritforge.sim.engine import verify_random


@pytest.mark.parametrize("width", [1, 2, 3])
@pytest.mark.parametrize("variant", ["TLG", "STD"])
def test_wordcomp_structural_exhaustive(width, variant):
    report = verify_exhaustive(
        build_wordcomp(width, variant),
        oracle_for("wordcomp", width, variant),
        settle_cycles=settle_cycles_for("wordcomp", width, variant),
    )
    assert report.passed and report.total == 3 ** (2 * width), report.summary()
    assert report.float_warnings == 0


@pytest.mark.parametrize("width", [1, 2, 3])
@pytest.mark.parametrize("variant", ["TLG", "STD"])
def test_adder_structural_exhaustive(width, variant):
    report = verify_exhaustive(
        build_adder(width, variant),
        oracle_for("adder", width, variant),
        settle_cycles=settle_cycles_for("adder", width, variant),
    )
    assert report.passed, report.mismatches[:3]
    assert report.float_warnings == 0


@pytest.mark.parametrize("width", [1, 2, 3])
@pytest.mark.parametrize("variant", ["TLG", "STD"])
def test_sub_structural_exhaustive(width, variant):
    report = verify_exhaustive(
        build_sub(width, variant),
        oracle_for("sub", width, variant),
        settle_cycles=settle_cycles_for("sub", width, variant),
    )
    assert report.passed, report.mismatches[:3]
    assert report.float_warnings == 0


def test_wordcomp_m8_random_samples():
    report = verify_random(
        build_wordcomp(8, "TLG"), oracle_for("wordcomp", 8), settle_cycles=3,
        samples=1000, seed=11,
    )
    assert report.passed and report.total == 1000


def test_adder_m8_random_samples():
    report = verify_random(
        build_adder(8, "STD"), oracle_for("adder", 8, "STD"), settle_cycles=2,
        samples=1000, seed=12,
    )
    assert report.passed and report.total == 1000


def test_sub_m8_random_samples():
    report = verify_random(
        build_sub(8, "STD"), oracle_for("sub", 8, "STD"), settle_cycles=2,
        samples=1000, seed=13,
    )
    assert report.passed and report.total == 1000
