"""The numba-compiled kernels and the pure-numpy fallback must agree."""

import os
import subprocess
import sys

import numpy as np

from lcplab import kernels

CHECK = r"""
import numpy as np
from lcplab import kernels
assert not kernels.HAS_NUMBA, "fallback flag did not disable numba"
rng = np.random.default_rng(0)
a = rng.standard_normal((5, 5))
a -= np.trace(a) / 5 * np.eye(5)
print(repr(kernels.expm(a).sum()))
print(repr(kernels.charpoly_coeffs(kernels.expm(a)).tolist()))
ts = np.arange(1e-2, 1.0, 1e-2)
print(repr(float(kernels.scan_defects(np.diag([1.0,-1.0]), ts).min())))
"""


def _fallback_output():
    env = dict(os.environ, LCPLAB_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", CHECK], capture_output=True, text=True, env=env
    )
    assert out.returncode == 0, out.stderr
    return out.stdout.splitlines()


def test_fallback_matches_jit():
    lines = _fallback_output()
    rng = np.random.default_rng(0)
    a = rng.standard_normal((5, 5))
    a -= np.trace(a) / 5 * np.eye(5)
    assert np.isclose(eval(lines[0]), kernels.expm(a).sum(), rtol=1e-12)
    got = np.array(eval(lines[1]))
    here = kernels.charpoly_coeffs(kernels.expm(a))
    assert np.allclose(got, here, rtol=1e-9, atol=1e-12)
    ts = np.arange(1e-2, 1.0, 1e-2)
    mine = float(kernels.scan_defects(np.diag([1.0, -1.0]), ts).min())
    assert np.isclose(eval(lines[2]), mine, rtol=1e-9, atol=1e-12)


def test_expm_against_series():
    a = np.array([[0.0, 0.3], [-0.2, 0.0]])
    e = np.eye(2)
    term = np.eye(2)
    for k in range(1, 30):
        term = term @ a / k
        e = e + term
    assert np.allclose(kernels.expm(a), e, atol=1e-14)


def test_charpoly_matches_numpy_poly():
    rng = np.random.default_rng(1)
    for _ in range(5):
        m = rng.standard_normal((4, 4))
        assert np.allclose(
            kernels.charpoly_coeffs(m), np.poly(m), rtol=1e-9, atol=1e-10
        )


def test_integer_defect():
    assert kernels.integer_defect(np.array([1.0, -3.0, 1.0])) == 0.0
    assert np.isclose(kernels.integer_defect(np.array([1.0, -2.9, 1.2])), 0.2)
