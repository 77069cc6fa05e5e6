from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hampreserve import _kernels_py, kernels
from hampreserve.connectivity import kappa
from hampreserve.hamilton import ham_cycle_dirac
from hampreserve.instances import gen_barbell_dirac, gen_dirac

compiled = pytest.importorskip("hampreserve._kernels")
NAMES = ("closure_fill", "unwind_cycle", "augment_flow")


def test_backend_selected_at_import():
    assert kernels.BACKEND == "compiled"
    out = subprocess.run(
        [sys.executable, "-c", "from hampreserve import kernels; print(kernels.BACKEND)"],
        env={**os.environ, "HAMPRESERVE_PURE": "1"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_closure_fill_parity():
    for seed in range(6):
        G = gen_dirac(20, seed)
        results = []
        for mod in (compiled, _kernels_py):
            mat = G.matrix()
            deg = mat.sum(axis=1, dtype=np.int64)
            out = np.zeros((190, 3), dtype=np.int64)
            count = mod.closure_fill(mat, deg, G.n, np.ones(G.n, dtype=np.uint8), out)
            results.append((count, out[:count].tolist(), mat.tolist()))
        assert results[0] == results[1]


@settings(max_examples=12)
@given(st.integers(8, 40), st.integers(0, 2**32))
def test_end_to_end_parity(n, seed):
    G = gen_dirac(n, seed)
    B = gen_barbell_dirac(max(20, n + n % 2), 2, seed)
    fast = (ham_cycle_dirac(G), kappa(B), kappa(G))
    saved = {name: getattr(kernels, name) for name in NAMES}
    try:
        for name in NAMES:
            setattr(kernels, name, getattr(_kernels_py, name))
        slow = (ham_cycle_dirac(G), kappa(B), kappa(G))
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)
    assert fast == slow
