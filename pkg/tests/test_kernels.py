import os
import subprocess
import sys

import numpy as np
import pytest

from conftest import young_zoo
from orlicz import _kernels
from orlicz.funcspace import random_simple_function

pytestmark = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")

ZOO = young_zoo()


def _both(i, *args):
    return _kernels.NUMPY_KERNELS[i](*args), _kernels.NUMBA_KERNELS[i](*args)


@pytest.mark.parametrize("phi", ZOO, ids=str)
def test_eval_backends_agree(phi, rng):
    t = np.concatenate([[0.0, 1e-300, 1.0, 1e300], np.exp(rng.uniform(-30, 30, 2000))])
    a, b = _both(0, *phi.program, t)
    np.testing.assert_allclose(a, b, rtol=1e-14, atol=0)


@pytest.mark.parametrize("phi", ZOO, ids=str)
def test_inverse_backends_agree(phi, rng):
    s = np.concatenate([[0.0, 1e-200, 1.0, 1e200], np.exp(rng.uniform(-30, 30, 500))])
    a, b = _both(1, *phi.program, s, 1e-10, 200)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=0)


@pytest.mark.parametrize("phi", ZOO[:6], ids=str)
def test_reductions_agree(phi, rng):
    for _ in range(20):
        f = random_simple_function(rng)
        b = float(np.exp(rng.uniform(-5, 5)))
        m_np, m_nb = _both(2, *phi.program, f.values, f.measures, b)
        assert m_nb == pytest.approx(m_np, rel=1e-12)
        levels, tails = f.level_tails()
        w_np, w_nb = _both(3, *phi.program, levels, tails, b)
        assert w_nb == pytest.approx(w_np, rel=1e-12)


def test_step_distribution_agrees(rng):
    for _ in range(20):
        f = random_simple_function(rng)
        lam = np.concatenate([f.values, np.exp(rng.uniform(-12, 12, 300))])
        a, b = _both(4, f.values, f.measures, lam)
        np.testing.assert_allclose(a, b, rtol=1e-13)


def test_env_flag_selects_numpy():
    code = "import orlicz; print(orlicz.BACKEND)"
    env = {**os.environ, "ORLICZ_DISABLE_NUMBA": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["ORLICZ_DISABLE_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numba"


def test_active_backend_matches_flag():
    expected = "numpy" if _kernels._numba_disabled() else "numba"
    assert _kernels.BACKEND == expected
