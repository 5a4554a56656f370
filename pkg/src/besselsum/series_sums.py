"""Definition-level Bessel series and the Lommel-type tail identity.

These sums are the ground truth the closed forms are tested against:

* p_direct:        sum_{n>=0} n J_n(x) Jhat_n(x), the target series itself
  (Jhat_n = dJ_nu/dnu at nu = n);
* sum_squares_all: sum_{nu>=0} J_nu(x)^2, which collapses to
  (J_0(x)^2 + 1)/2 by the bilateral closure sum_{-inf}^{inf} J_nu^2 = 1;
* sum_jjhat:       sum_{nu>=0} J_nu Jhat_nu, equal to
  -(1/2) int_x^inf J_0(t)^2/t dt + (1/2) J_0 Jhat_0;
* lommel_tail:     int_x^inf J_nu(t)^2/t dt via the Lommel-series identity
  1/(2 nu) [1 - J_nu^2(x) - 2 sum_{n>=1} J_{nu+n}^2(x)]   (nu > 0),
  with direct quadrature at nu = 0 where the prefactor is singular.

All sums are truncated at N(x) = ceil(x + c x^(1/3) + m): J_n(x) decays
super-exponentially once n exceeds x by a few multiples of x^(1/3), so the
dropped tail is below 1e-14 of the peak term for x <= 100 at the default
margins.  Every routine checks that the last kept term has actually
collapsed relative to the largest one and raises NonConvergenceError if
the truncation policy left the decay regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import kernels as _k
from .bessel_core import _as_nu, _as_x
from .errors import DomainError, NonConvergenceError, PrecisionLossError
from .order_derivatives import jhat, jhat_closed_integer
from .oscillatory_quadrature import integral_j0sq_over_t

# Closed-form order derivatives are spot-checked against finite
# differences at this cadence inside the big sums.
_SPOT_CHECK_EVERY = 8
_SPOT_CHECK_TOL = 1e-7


@dataclass(frozen=True)
class SeriesTruncation:
    """Truncation policy N(x) = ceil(x + growth_coefficient x^(1/3) + base_margin).

    base_margin must be at least 10 so that N(x) >= x + 10 holds for every
    nonnegative growth coefficient; tail_tolerance is the absolute error
    the dropped tail is allowed to contribute.
    """

    base_margin: int = 20
    growth_coefficient: float = 9.0
    tail_tolerance: float = 1e-12

    def __post_init__(self) -> None:
        if int(self.base_margin) != self.base_margin or self.base_margin < 10:
            raise DomainError(
                f"base_margin must be an integer >= 10, got {self.base_margin}")
        if not (self.growth_coefficient >= 0.0 and math.isfinite(self.growth_coefficient)):
            raise DomainError(
                f"growth_coefficient must be finite and >= 0, got {self.growth_coefficient}")
        if not (self.tail_tolerance > 0.0):
            raise DomainError("tail_tolerance must be positive")

    def n_terms(self, x: float) -> int:
        return int(math.ceil(x + self.growth_coefficient * x ** (1.0 / 3.0)
                             + self.base_margin))


DEFAULT_TRUNCATION = SeriesTruncation()


def _require_collapsed(last_abs: float, peak_abs: float, tol: float, what: str) -> None:
    # Stopping is only legitimate inside the decay regime: the final kept
    # term must sit at least 1e-3 * tail_tolerance below the peak term.
    if peak_abs == 0.0:
        return
    if not (last_abs <= 1e-3 * tol * peak_abs):
        raise NonConvergenceError(
            f"{what}: terms have not collapsed at the truncation point "
            f"(last/peak = {last_abs / peak_abs:.3e})")


def _jhat_term(n: int, x: float) -> float:
    # Closed form where it holds full precision, finite differences in the
    # narrow band it refuses; every 8th closed value is cross-checked.
    try:
        value = jhat_closed_integer(n, x)
    except PrecisionLossError:
        return jhat(n, x)
    if n > 0 and n % _SPOT_CHECK_EVERY == 0:
        fd = jhat(n, x)
        if abs(value - fd) > _SPOT_CHECK_TOL * max(1.0, abs(value)):
            raise PrecisionLossError(
                f"closed-form order derivative disagrees with finite "
                f"differences at n={n}, x={x}: {value!r} vs {fd!r}")
    return value


def p_direct(point, trunc: SeriesTruncation | None = None) -> float:
    """Direct evaluation of P(x) = sum_{n>=1} n J_n(x) dJ_nu/dnu|_{nu=n}.

    The n = 0 summand vanishes identically, so the sum starts at 1.
    Truncation at N(x) per the policy; raises NonConvergenceError when the
    final term has not collapsed below 1e-3 * tail_tolerance of the peak.
    """
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"p_direct requires x > 0, got {x}")
    trunc = trunc if trunc is not None else DEFAULT_TRUNCATION
    nmax = trunc.n_terms(x)
    jbuf = np.empty(nmax + 1)
    _k.j_array(x, nmax, jbuf)
    total = 0.0
    peak = 0.0
    last = 0.0
    for n in range(1, nmax + 1):
        term = n * jbuf[n] * _jhat_term(n, x)
        total += term
        last = abs(term)
        if last > peak:
            peak = last
    _require_collapsed(last, peak, trunc.tail_tolerance, "p_direct")
    return total


def sum_squares_all(point, trunc: SeriesTruncation | None = None) -> float:
    """sum_{nu=0}^{N(x)} J_nu(x)^2; equals (J_0(x)^2 + 1)/2 in the limit."""
    x = _as_x(point)
    trunc = trunc if trunc is not None else DEFAULT_TRUNCATION
    if x == 0.0:
        return 1.0
    nmax = trunc.n_terms(x)
    jbuf = np.empty(nmax + 1)
    _k.j_array(x, nmax, jbuf)
    sq = jbuf * jbuf
    _require_collapsed(float(sq[-1]), float(sq.max()), trunc.tail_tolerance,
                       "sum_squares_all")
    return float(sq.sum())


def sum_jjhat(point, trunc: SeriesTruncation | None = None) -> float:
    """sum_{nu=0}^{N(x)} J_nu(x) Jhat_nu(x).

    The limit equals -(1/2) int_x^inf J_0(t)^2/t dt + (1/2) J_0 Jhat_0,
    which tests combine from lommel_tail(0, x) and jhat(0, x).
    """
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"sum_jjhat requires x > 0, got {x}")
    trunc = trunc if trunc is not None else DEFAULT_TRUNCATION
    nmax = trunc.n_terms(x)
    jbuf = np.empty(nmax + 1)
    _k.j_array(x, nmax, jbuf)
    total = 0.0
    peak = 0.0
    last = 0.0
    for n in range(0, nmax + 1):
        term = jbuf[n] * _jhat_term(n, x)
        total += term
        last = abs(term)
        if last > peak:
            peak = last
    _require_collapsed(last, peak, trunc.tail_tolerance, "sum_jjhat")
    return total


def _j_order_ladder(nu: float, x: float, count: int) -> np.ndarray:
    """J_{nu+k}(x) for k = 0..count by anchored downward recurrence.

    Downward recurrence in the order is the stable direction; the raw run
    is normalized against one accurately computed value at the index where
    |J| peaks, which keeps the anchor away from zeros of J.
    """
    margin = 30 + int(9.0 * x ** (1.0 / 3.0))
    ktop = count + margin
    f = np.zeros(ktop + 2)
    f[ktop] = 1e-160
    for k in range(ktop, 0, -1):
        f[k - 1] = (2.0 * (nu + k) / x) * f[k] - f[k + 1]
        if abs(f[k - 1]) > 1e250:
            f[k - 1:] *= 1e-250
    kstar = int(np.argmax(np.abs(f[:count + 1])))
    ref = _k.jnu(nu + kstar, x, 0)
    return f[:count + 1] * (ref / f[kstar])


def lommel_tail(order, point, trunc: SeriesTruncation | None = None) -> float:
    """int_x^inf J_nu(t)^2 / t dt.

    nu > 0 uses the Lommel-series identity
    (1/(2 nu)) [1 - J_nu^2(x) - 2 sum_{n>=1} J_{nu+n}^2(x)]; the prefactor
    is singular at nu = 0, where the integral is computed by oscillatory
    quadrature instead.  Negative order is a domain error.
    """
    nu = _as_nu(order)
    x = _as_x(point)
    if nu < 0.0:
        raise DomainError(f"lommel_tail requires nu >= 0, got {nu}")
    if x <= 0.0:
        raise DomainError(f"lommel_tail requires x > 0, got {x}")
    trunc = trunc if trunc is not None else DEFAULT_TRUNCATION
    count = trunc.n_terms(x)
    if nu == 0.0:
        return integral_j0sq_over_t(x).value
    if float(nu).is_integer():
        base = int(nu)
        jbuf = np.empty(base + count + 1)
        _k.j_array(x, base + count, jbuf)
        vals = jbuf[base:]
    else:
        vals = _j_order_ladder(nu, x, count)
    sq = vals * vals
    _require_collapsed(float(sq[-1]), float(sq.max()), trunc.tail_tolerance,
                       "lommel_tail")
    return (1.0 - float(sq[0]) - 2.0 * float(sq[1:].sum())) / (2.0 * nu)
