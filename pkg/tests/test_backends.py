"""Backend selection and compiled-vs-pure kernel agreement."""

import os
import subprocess
import sys

import numpy as np
import pytest

import besselsum
from besselsum.backend import kernels, load_pure_kernels

pure = load_pure_kernels()


def test_active_backend_reported():
    assert besselsum.BACKEND in ("compiled", "pure")
    assert kernels.KERNEL_BACKEND == besselsum.BACKEND


def test_pure_kernels_always_loadable():
    assert pure.KERNEL_BACKEND == "pure"
    assert pure.j0(0.0) == 1.0


@pytest.mark.parametrize(
    "name",
    ["j0", "j1", "y0", "y1", "i0", "i1", "k0", "k1"],
)
def test_scalar_kernels_agree(name):
    xs = np.geomspace(0.05, 80.0, 60)
    for x in xs:
        a = getattr(kernels, name)(float(x))
        b = getattr(pure, name)(float(x))
        assert a == pytest.approx(b, rel=1e-14, abs=1e-300)


def test_jy01_agrees():
    for x in np.geomspace(0.1, 60.0, 25):
        quad_a = kernels.jy01(float(x))
        quad_b = pure.jy01(float(x))
        assert np.allclose(quad_a, quad_b, rtol=1e-14, atol=0.0)


def test_jnu_and_yn_agree():
    for nu in (0.5, 2.0, 7.25):
        for x in (0.3, 4.0, 33.0):
            assert kernels.jnu(nu, x, 0) == pytest.approx(
                pure.jnu(nu, x, 0), rel=1e-13
            )
    for n in (1, 4, 9):
        for x in (0.7, 12.0):
            assert kernels.yn_upward(n, x) == pytest.approx(
                pure.yn_upward(n, x), rel=1e-13
            )


def test_j_array_agrees():
    out_a = np.empty(41)
    out_b = np.empty(41)
    for x in (0.4, 7.0, 38.0):
        kernels.j_array(x, 40, out_a)
        pure.j_array(x, 40, out_b)
        assert np.allclose(out_a, out_b, rtol=1e-13, atol=1e-280)


def test_complex_gamma_kernels_agree():
    for zr, zi in ((-0.75, 3.0), (2.5, -11.0), (-0.75, 120.0)):
        assert kernels.clgamma(zr, zi) == pytest.approx(
            pure.clgamma(zr, zi), rel=1e-13
        )
        assert kernels.cdigamma(zr, zi) == pytest.approx(
            pure.cdigamma(zr, zi), rel=1e-13
        )


def test_panel_and_sweep_agree():
    nodes, weights = np.polynomial.legendre.leggauss(32)
    assert kernels.panel_j0y0_t2(3.0, 5.0, nodes, weights) == pytest.approx(
        pure.panel_j0y0_t2(3.0, 5.0, nodes, weights), rel=1e-13
    )
    assert kernels.panel_jnsq_t(2, 3.0, 5.0, nodes, weights) == pytest.approx(
        pure.panel_jnsq_t(2, 3.0, 5.0, nodes, weights), rel=1e-13
    )
    us = np.array([20.0, 12.0, 6.0, 2.0])
    out_a = np.empty(4)
    out_b = np.empty(4)
    # I(20) supplied from the package's certified tail integral.
    from besselsum import integral_j0y0_tail

    i20 = integral_j0y0_tail(20.0).value
    tail_a = kernels.sweep_q(us, i20, nodes, weights, 1.0, out_a)
    tail_b = pure.sweep_q(us, i20, nodes, weights, 1.0, out_b)
    assert tail_a == pytest.approx(tail_b, rel=1e-13)
    assert np.allclose(out_a, out_b, rtol=1e-12, atol=1e-16)


def _run_with_backend(value):
    env = dict(os.environ, BESSELSUM_BACKEND=value)
    return subprocess.run(
        [sys.executable, "-c", "import besselsum; print(besselsum.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
    )


def test_env_var_forces_pure():
    proc = _run_with_backend("pure")
    assert proc.returncode == 0
    assert proc.stdout.strip() == "pure"


def test_env_var_rejects_unknown():
    proc = _run_with_backend("sparkly")
    assert proc.returncode != 0
    assert "BESSELSUM_BACKEND" in proc.stderr
