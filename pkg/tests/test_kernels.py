import os

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from corp import _backend

backends = ["python"]
try:
    _backend.kernels("compiled")
    backends.append("compiled")
except ImportError:
    pass


def test_compiled_backend_selected_when_built():
    if "compiled" not in backends or os.environ.get("CORP_PURE_PYTHON", "") not in ("", "0"):
        pytest.skip("extension not built or fallback forced")
    assert _backend.BACKEND == "compiled"


@pytest.mark.parametrize("name", backends)
def test_known_blocks(name):
    k = _backend.kernels(name)
    start, stop, w, e = k.pav_blocks([1, 1, 1, 1], [0, 1, 0, 1])
    assert start.tolist() == [0, 1, 3]
    assert stop.tolist() == [0, 2, 3]
    assert w.tolist() == [1, 2, 1]
    assert e.tolist() == [0, 1, 1]


@pytest.mark.parametrize("name", backends)
def test_batch_shape_mismatch(name):
    with pytest.raises(ValueError):
        _backend.kernels(name).pav_fitted_batch([1, 1], np.zeros((3, 4), dtype=np.int64))


problems = st.lists(st.tuples(st.integers(1, 6), st.integers(0, 6)), min_size=1, max_size=30).map(
    lambda rows: ([c for c, _ in rows], [min(c, o) for c, o in rows])
)


@pytest.mark.skipif(len(backends) < 2, reason="extension not built")
@given(problems)
@settings(max_examples=300, deadline=None)
def test_backends_agree(problem):
    counts, events = problem
    py = _backend.kernels("python")
    cy = _backend.kernels("compiled")
    for a, b in zip(py.pav_blocks(counts, events), cy.pav_blocks(counts, events)):
        np.testing.assert_array_equal(a, b)
    rng = np.random.default_rng(len(counts))
    batch = rng.binomial(counts, 0.5, size=(5, len(counts)))
    np.testing.assert_array_equal(py.pav_fitted_batch(counts, batch), cy.pav_fitted_batch(counts, batch))


@pytest.mark.parametrize("name", backends)
def test_batch_matches_blocks(name):
    k = _backend.kernels(name)
    rng = np.random.default_rng(3)
    counts = rng.integers(1, 5, 50)
    events = rng.binomial(counts, np.linspace(0.1, 0.9, 50), size=(20, 50))
    fitted = k.pav_fitted_batch(counts, events)
    for row, f in zip(events, fitted):
        start, stop, w, e = k.pav_blocks(counts, row)
        np.testing.assert_array_equal(np.repeat(e / w, stop - start + 1), f)


def test_forced_fallback_reproduces_compiled_band():
    import subprocess
    import sys

    code = (
        "import numpy as np, corp;"
        "rng = np.random.default_rng(1); x = rng.random(300);"
        "d = corp.ForecastDataset(x, (rng.random(300) < x).astype(int));"
        "b = corp.compute_band(d, corp.BandSpec(replicates=100, seed=4));"
        "print(corp.BACKEND, b.lower.tobytes().hex(), b.upper.tobytes().hex())"
    )
    outs = {}
    for flag in ("1", "0"):
        env = {"CORP_PURE_PYTHON": flag, "PATH": ""}
        r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, lo, hi = r.stdout.split()
        outs[backend] = (lo, hi)
    assert "python" in outs
    if "compiled" in backends:
        assert outs["python"] == outs["compiled"]
