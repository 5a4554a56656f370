"""Definition-level series: direct P(x), square sums, Lommel tails.

Frozen reference values were computed with mpmath at 40 significant
digits from the defining series and integrals, independent of the
package's own algorithms.
"""

import math

import mpmath as mp
import pytest

from besselsum import (
    DomainError,
    EvalPoint,
    NonConvergenceError,
    SeriesTruncation,
    lommel_tail,
    p_direct,
    sum_jjhat,
    sum_squares_all,
)

mp.mp.dps = 30

# sum_{n>=1} n J_n(x) dJ_nu/dnu|_{nu=n}, truncated at n = 220 with mpmath
P_REF = {
    1.0: -0.24746063289205643422,
    10.0: -0.24411467742949897712,
}


def _jnsq_tail_oracle(n: int, x: float) -> float:
    """int_x^inf J_n(t)^2/t dt by chunked quadrature plus the analytic tail.

    Beyond X the integrand is 1/(pi t^2) + (-1)^n sin(2t)/(pi t^2) + O(t^-3)
    from the Hankel expansion, so the truncated remainder is
    1/(pi X) + (-1)^n cos(2X)/(2 pi X^2) up to O(X^-3); with X ~ 1250 the
    neglected part sits near 1e-10.  Calibrated against the exact
    elementary form at n = 1/2.
    """
    panel = 10.0 * math.pi
    pts = [x + k * panel for k in range(41)]
    total = mp.mpf(0)
    with mp.workdps(20):
        for a, b in zip(pts[:-1], pts[1:]):
            total += mp.quad(lambda t: mp.besselj(n, t) ** 2 / t, [a, b])
    big_x = pts[-1]
    tail = 1.0 / (math.pi * big_x)
    tail += (-1) ** n * math.cos(2.0 * big_x) / (2.0 * math.pi * big_x * big_x)
    return float(total) + tail


@pytest.mark.parametrize("x,want", sorted(P_REF.items()))
def test_p_direct_frozen(x, want):
    assert p_direct(EvalPoint(x)) == pytest.approx(want, abs=1e-12)


def test_p_direct_live_oracle():
    # independent recomputation at a point not in the frozen table
    x = 0.5
    want = mp.nsum(
        lambda n: n * mp.besselj(n, x) * mp.diff(lambda v: mp.besselj(v, x), n),
        [1, 40],
    )
    assert p_direct(EvalPoint(x)) == pytest.approx(float(want), abs=1e-12)


def test_p_direct_approaches_quarter():
    # P(x) -> -1/4 with an O(1/x) oscillatory envelope
    for x in (20.0, 50.0, 100.0):
        assert abs(p_direct(EvalPoint(x)) + 0.25) <= 2.0 / x


@pytest.mark.parametrize("x", [0.3, 2.0, 9.0, 40.0])
def test_sum_squares_closure(x):
    # sum_{nu>=0} J_nu^2 = (1 + J_0^2)/2 from the bilateral closure
    want = (1.0 + float(mp.besselj(0, x)) ** 2) / 2.0
    assert sum_squares_all(EvalPoint(x)) == pytest.approx(want, abs=1e-13)


def test_sum_squares_origin():
    assert sum_squares_all(EvalPoint(0.0)) == 1.0


@pytest.mark.parametrize("x", [0.7, 4.0, 15.0])
def test_sum_jjhat_identity(x):
    # sum_{nu>=0} J_nu Jhat_nu = (1/2) J_0 Jhat_0 - (1/2) int_x^inf J_0^2/t
    j0 = float(mp.besselj(0, x))
    jhat0 = float(mp.diff(lambda v: mp.besselj(v, x), 0))
    want = 0.5 * j0 * jhat0 - 0.5 * _jnsq_tail_oracle(0, x)
    assert sum_jjhat(EvalPoint(x)) == pytest.approx(want, abs=1e-9)


class TestLommelTail:
    @pytest.mark.parametrize("nu", [1, 2, 3])
    @pytest.mark.parametrize("x", [0.8, 5.0, 17.0])
    def test_integer_orders_against_quadrature(self, nu, x):
        want = _jnsq_tail_oracle(nu, x)
        assert lommel_tail(float(nu), EvalPoint(x)) == pytest.approx(
            want, abs=1e-9
        )

    @pytest.mark.parametrize("x", [0.8, 3.0, 12.0])
    def test_half_integer_closed_form(self, x):
        # J_{1/2}(t) = sqrt(2/(pi t)) sin t collapses the integral to
        # elementary functions plus the sine integral:
        # (1/pi) [1/x - cos(2x)/x + pi - 2 Si(2x)]
        want = (1.0 / math.pi) * (
            1.0 / x - math.cos(2.0 * x) / x + math.pi - 2.0 * float(mp.si(2.0 * x))
        )
        assert lommel_tail(0.5, EvalPoint(x)) == pytest.approx(want, abs=1e-12)

    def test_zero_order_route(self):
        # nu = 0 bypasses the series (singular prefactor) via quadrature
        # frozen: _jnsq_tail_oracle(0, 3.3) recomputed at 40 digits
        assert lommel_tail(0.0, EvalPoint(3.3)) == pytest.approx(
            0.10951170360171900998, abs=1e-9
        )

    def test_rejects_negative_order(self):
        with pytest.raises(DomainError):
            lommel_tail(-1.0, EvalPoint(2.0))

    def test_rejects_nonpositive_x(self):
        with pytest.raises(DomainError):
            lommel_tail(1.0, EvalPoint(0.0))


class TestTruncationPolicy:
    def test_unreachable_tolerance_raises(self):
        # an absurd tail tolerance puts the stopping bar below what the
        # truncation point can deliver
        trunc = SeriesTruncation(base_margin=10, growth_coefficient=0.0,
                                 tail_tolerance=1e-300)
        with pytest.raises(NonConvergenceError):
            p_direct(EvalPoint(30.0), trunc)

    def test_validation(self):
        with pytest.raises(DomainError):
            SeriesTruncation(base_margin=5)
        with pytest.raises(DomainError):
            SeriesTruncation(base_margin=10.5)
        with pytest.raises(DomainError):
            SeriesTruncation(growth_coefficient=-1.0)
        with pytest.raises(DomainError):
            SeriesTruncation(tail_tolerance=0.0)

    def test_p_direct_rejects_origin(self):
        with pytest.raises(DomainError):
            p_direct(EvalPoint(0.0))
