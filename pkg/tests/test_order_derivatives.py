"""Order derivatives of J_nu at integer order, both routes."""

import math

import mpmath as mp
import pytest

from besselsum import (
    DomainError,
    EvalPoint,
    NuDerivativeConfig,
    PrecisionLossError,
    jhat,
    jhat_closed_integer,
)

mp.mp.dps = 30


def _reference(n, x):
    return float(mp.diff(lambda v: mp.besselj(v, x), mp.mpf(n)))


CASES = [(0, 0.3), (1, 0.6), (2, 5.0), (5, 9.5), (12, 30.0), (41, 40.0)]


@pytest.mark.parametrize("n,x", CASES)
def test_closed_route_matches_reference(n, x):
    assert jhat_closed_integer(n, EvalPoint(x)) == pytest.approx(
        _reference(n, x), abs=1e-10
    )


@pytest.mark.parametrize("n,x", CASES)
def test_difference_route_matches_reference(n, x):
    assert jhat(n, EvalPoint(x)) == pytest.approx(_reference(n, x), abs=1e-9)


def test_zero_order_anchor():
    # jhat(0, x) = (pi/2) Y_0(x); the closed route returns it exactly,
    # the difference route to its budget.
    for x in (0.1, 0.9, 4.0, 17.0, 40.0):
        want = 0.5 * math.pi * float(mp.bessely(0, x))
        assert jhat_closed_integer(0, EvalPoint(x)) == pytest.approx(
            want, abs=1e-13
        )
        assert jhat(0, EvalPoint(x)) == pytest.approx(want, abs=1e-9)


def test_closed_route_refuses_band_edge_cancellation():
    # Near n ~ x at large x the companion sum loses more than the
    # certified 1e-10; the closed route must refuse rather than return
    # a noisy value, and the difference route still delivers.
    with pytest.raises(PrecisionLossError):
        jhat_closed_integer(110, EvalPoint(100.0))
    assert jhat(110, EvalPoint(100.0)) == pytest.approx(
        _reference(110, 100.0), abs=1e-8
    )


def test_richardson_levels_agree():
    want = _reference(3, 2.0)
    for levels in (1, 2, 3):
        config = NuDerivativeConfig(richardson_levels=levels)
        assert jhat(3, EvalPoint(2.0), config) == pytest.approx(
            want, abs=1e-7 if levels == 1 else 1e-9
        )


def test_config_validation():
    with pytest.raises(DomainError):
        NuDerivativeConfig(fd_step=0.0)
    with pytest.raises(DomainError):
        NuDerivativeConfig(fd_step=1e-2)
    with pytest.raises(DomainError):
        NuDerivativeConfig(richardson_levels=4)
    with pytest.raises(DomainError):
        jhat(-1, EvalPoint(1.0))
    with pytest.raises(DomainError):
        jhat_closed_integer(-2, EvalPoint(1.0))
