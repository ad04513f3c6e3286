"""Backend selection and the benchmark script."""

import os
import subprocess
import sys
from pathlib import Path

import pytest

from tritforge.sim import active_backend, available_backends

BENCH = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_backends.py"


def test_backend_is_available():
    assert active_backend() in ("compiled", "python")
    assert "python" in available_backends()


def test_pure_env_override():
    code = (
        "from tritforge.sim import active_backend;"
        "print(active_backend())"
    )
    env = dict(os.environ, TRITFORGE_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(not BENCH.exists(), reason="benchmark script not present")
def test_benchmark_smoke():
    out = subprocess.run(
        [sys.executable, str(BENCH), "--quick"],
        capture_output=True, text=True, timeout=600,
    )
    assert out.returncode == 0, out.stderr
    assert "adder3_tlg" in out.stdout
    if "compiled" in available_backends():
        assert "speedup" in out.stdout
