"""Closed forms for the Bessel-series kernel and the Green's combination.

The central objects:

    P(x) = -(1/8) (2 + pi J_0 Y_0 - pi x int_x^inf J_0 Y_0 / t^2 dt)
    Q(x) = -4 P(x) - 1 = (pi/2) (J_0 Y_0 - x int_x^inf J_0 Y_0 / t^2 dt)

P equals the series sum_{n} n J_n Jhat_n (tested against
series_sums.p_direct), tends to -1/4 at large x, and its regularized form
Q interpolates between Q(0) = -1 and the oscillatory decay -cos(2x)/x.
Q is the kernel of the diagonal Green's-function combination

    (1/2 pi) int_0^inf Q(lambda r) lambda / (lambda^2 + m^2) dlambda
        = (1/16 pi) (sqrt(pi) m r G30(m^2 r^2) - 4 K_0(m r)^2)

whose radial integral is -1/(6 m^2).

Branch policy for P and Q: the closed form loses accuracy as x -> 0
(pi J_0 Y_0 ~ 2 ln x against the x-integral term), so below x_switch the
direct series takes over; beyond x = 45 the integral is evaluated by the
integration-by-parts tail alone, whose certified remainder is below 1e-13
there.  Q(x) for x < 1e-6 returns the continuity limit -1 outright.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .backend import kernels as _k
from .bessel_core import _as_x
from .errors import DomainError, TruncationWarning
from .meijer_g import ContourConfig, meijer_g20, meijer_g30
from .oscillatory_quadrature import (
    _A0,
    _B0,
    _gl,
    _ibp_tail,
    Estimate,
    QuadraturePlan,
    integral_j0y0_tail,
    lambda_kernel_integral,
)
from .series_sums import SeriesTruncation, p_direct

_ASYM_START = 45.0
_Q_LIMIT_BELOW = 1e-6
# G30's integrand decays like e^{-pi |Im s|}: by |Im s| = 24 it sits at
# e^{-75} of its peak, so a short contour is exact to double precision.
_LIGHT_CONTOUR = ContourConfig(im_cutoff=24.0)


@dataclass(frozen=True)
class GreenParams:
    """Radial coordinate and mass of the diagonal Green's combination.

    Closed forms depend on (r, m) only through the product m r and the
    overall 1/m^2 scaling of the radial integral; the angular coordinate
    never enters diagonal quantities.
    """

    r: float
    m: float

    def __post_init__(self) -> None:
        if not (self.r > 0.0 and math.isfinite(self.r)):
            raise DomainError(f"r must be positive and finite, got {self.r}")
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise DomainError(f"m must be positive and finite, got {self.m}")


@dataclass(frozen=True)
class KernelSwitch:
    """Crossover point between the direct series and the closed form."""

    x_switch: float = 0.5

    def __post_init__(self) -> None:
        if not (0.05 <= self.x_switch <= 2.0):
            raise DomainError(
                f"x_switch must lie in [0.05, 2], got {self.x_switch}")


DEFAULT_SWITCH = KernelSwitch()


def _tail_integral_asymptotic(x: float) -> tuple[float, float]:
    # int_x^inf J_0 Y_0 / t^2 dt for x >= 45 by the Hankel-product
    # expansion and integration by parts alone (depth 8); returns
    # (value, certified remainder).
    terms = []
    for d in range(len(_A0)):
        if _A0[d] != 0.0:
            terms.append((3 + d, -(2.0 / math.pi) * _A0[d], 0.0))
        if _B0[d] != 0.0:
            terms.append((3 + d, 0.0, (2.0 / math.pi) * _B0[d]))
    tail, rem = _ibp_tail(terms, x, 8)
    rem += (2.0 / math.pi) * (abs(_A0[-1]) + abs(_B0[-1])) * x ** (-len(_A0) - 2)
    return tail, rem


def _q_product(x: float) -> tuple[float, float]:
    # (pi/2)(J_0 Y_0 - x I) with the integral route picked by x; returns
    # (value, error estimate).
    j0v, _, y0v, _ = _k.jy01(x)
    if x >= _ASYM_START:
        tail, rem = _tail_integral_asymptotic(x)
        return 0.5 * math.pi * (j0v * y0v - x * tail), \
            0.5 * math.pi * (x * rem + 4.0 * abs(j0v * y0v) * 2.2e-16)
    est = integral_j0y0_tail(x)
    return 0.5 * math.pi * (j0v * y0v - x * est.value), \
        0.5 * math.pi * (x * est.error_estimate + 1e-15)


def p_closed(point, switch: KernelSwitch | None = None) -> float:
    """Closed form of P(x); delegates to the direct series below x_switch.

    Absolute error is below 1e-9 everywhere: the series branch is exact to
    rounding, the quadrature branch carries a certified budget, and the
    far branch (x >= 45) uses the integration-by-parts tail whose
    remainder is under 1e-13.
    """
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"p_closed requires x > 0, got {x}")
    switch = switch if switch is not None else DEFAULT_SWITCH
    if x < switch.x_switch:
        return p_direct(x)
    qv, _ = _q_product(x)
    return -0.25 * (qv + 1.0)


def p_closed_meijer(point, contour: ContourConfig | None = None) -> float:
    """P(x) with the tail integral replaced by its Meijer G expression.

    Verification path only: P = -(1/8)(2 + pi J_0 Y_0 + (sqrt(pi) x / 2)
    G20(x^2)), using the normalization resolved by
    verify_mellin_identity.
    """
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"p_closed_meijer requires x > 0, got {x}")
    j0v, _, y0v, _ = _k.jy01(x)
    g = meijer_g20(x * x, contour)
    return -0.125 * (2.0 + math.pi * j0v * y0v
                     + 0.5 * math.sqrt(math.pi) * x * g)


def q(point, switch: KernelSwitch | None = None) -> float:
    """Regularized kernel Q(x) = -4 P(x) - 1; Q -> -1 as x -> 0."""
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"q requires x > 0, got {x}")
    if x < _Q_LIMIT_BELOW:
        return -1.0
    switch = switch if switch is not None else DEFAULT_SWITCH
    return -4.0 * p_closed(x, switch) - 1.0


def q_product_form(point) -> float:
    """Q(x) through its displayed product form (pi/2)(J_0 Y_0 - x I).

    Algebraically identical to -4 p_closed - 1; kept as an independent
    route for the identity test.  Below the default switch the product
    form would hit the ln x cancellation, so the series route answers.
    """
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"q_product_form requires x > 0, got {x}")
    if x < _Q_LIMIT_BELOW:
        return -1.0
    if x < DEFAULT_SWITCH.x_switch:
        return -4.0 * p_direct(x) - 1.0
    return _q_product(x)[0]


def q_asymptotic(point) -> float:
    """Leading large-x form -cos(2x)/x."""
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"q_asymptotic requires x > 0, got {x}")
    return -math.cos(2.0 * x) / x


class QKernel:
    """Q(x) as a batch-evaluable kernel for the lambda-integrals.

    Points below the switch go through the direct series, the middle band
    through one shared sweep of the tail integral (carrying
    I(u) = int_u^inf J_0 Y_0/t^2 dt downward across the whole batch), and
    points beyond 45 through the integration-by-parts model.  batch()
    returns (values, error estimates) aligned with the input.
    """

    def __init__(self, switch: KernelSwitch | None = None,
                 trunc: SeriesTruncation | None = None) -> None:
        self.switch = switch if switch is not None else DEFAULT_SWITCH
        self.trunc = trunc
        # the sweep's opening integral wants a far split so its budget
        # does not dominate the batch error
        self._start_plan = QuadraturePlan(split_point=200.0)

    def __call__(self, u: float) -> float:
        if u < _Q_LIMIT_BELOW:
            return -1.0
        if u < self.switch.x_switch:
            return -4.0 * p_direct(u, self.trunc) - 1.0
        return _q_product(u)[0]

    def batch(self, us: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        us = np.asarray(us, dtype=float)
        vals = np.empty_like(us)
        errs = np.empty_like(us)
        order = np.argsort(us)
        sorted_us = us[order]
        sw = self.switch.x_switch
        i_tiny = int(np.searchsorted(sorted_us, _Q_LIMIT_BELOW))
        i_small = int(np.searchsorted(sorted_us, sw))
        i_mid = int(np.searchsorted(sorted_us, _ASYM_START))
        out = np.empty_like(sorted_us)
        oerr = np.empty_like(sorted_us)
        out[:i_tiny] = -1.0
        oerr[:i_tiny] = 1e-12
        for i in range(i_tiny, i_small):
            out[i] = -4.0 * p_direct(sorted_us[i], self.trunc) - 1.0
            oerr[i] = 5e-12
        if i_mid > i_small:
            desc = sorted_us[i_small:i_mid][::-1].copy()
            start = integral_j0y0_tail(desc[0], self._start_plan)
            gx, gw = _gl(32)
            block = np.empty_like(desc)
            _k.sweep_q(desc, start.value, gx, gw, 2.0, block)
            out[i_small:i_mid] = block[::-1]
            oerr[i_small:i_mid] = 0.5 * math.pi * (
                sorted_us[i_small:i_mid] * (start.error_estimate + 2e-14) + 1e-15)
        for i in range(i_mid, len(sorted_us)):
            out[i], oerr[i] = _q_product(sorted_us[i])
        vals[order] = out
        errs[order] = oerr
        return vals, errs


def greens_combination(params: GreenParams,
                       contour: ContourConfig | None = None) -> float:
    """Closed form of the diagonal Green's-function combination,
    (1/16 pi) (sqrt(pi) m r G30(m^2 r^2) - 4 K_0(m r)^2)."""
    w = params.m * params.r
    g = meijer_g30(w * w, contour if contour is not None else _LIGHT_CONTOUR)
    k0w = _k.k0(w)
    return (math.sqrt(math.pi) * w * g - 4.0 * k0w * k0w) / (16.0 * math.pi)


def greens_combination_quadrature(params: GreenParams,
                                  plan: QuadraturePlan | None = None) -> float:
    """The same combination by its defining lambda-integral,
    (1/2 pi) int_0^inf Q(lambda r) lambda/(lambda^2 + m^2) dlambda."""
    est = lambda_kernel_integral(params.r, params.m, QKernel(), 1.0,
                                 numerator_power=1, plan=plan)
    return est.value / (2.0 * math.pi)


def perturbative_diagonal_term(i: int, l: int, params: GreenParams,
                               plan: QuadraturePlan | None = None) -> float:
    """Diagonal perturbative integral
    (1/2 pi) int_0^inf lambda^(2i+1)/(lambda^2+m^2)^(1+i+l/2) Q(lambda r) dlambda.

    (i, l) = (0, 0) reduces to the Green's combination; raising l acts as
    a -d/d(m^2) on the l = 0 value.
    """
    if i < 0 or int(i) != i:
        raise DomainError(f"i must be a non-negative integer, got {i}")
    if l < 0 or int(l) != l or int(l) % 2:
        raise DomainError(f"l must be a non-negative even integer, got {l}")
    est = lambda_kernel_integral(params.r, params.m, QKernel(),
                                 1.0 + int(i) + int(l) // 2,
                                 numerator_power=2 * int(i) + 1, plan=plan)
    return est.value / (2.0 * math.pi)


def _greens_radial_panels(m: float, r_max: float) -> list[tuple[float, float]]:
    # Panel template in w = m r units: geometric toward the ln^2
    # singularity at 0, unit-scale panels through the oscillation-free
    # body, widening steps across the e^{-2w} tail.
    w_end = m * r_max
    bounds = [2.0 ** (-k) for k in range(20, -1, -1)]  # 2^-20 .. 1
    w = 1.0
    while w < min(20.0, w_end):
        w = min(w + 1.5, w_end)
        bounds.append(w)
    while w < w_end:
        w = min(w + 2.5, w_end)
        bounds.append(w)
    return [(a / m, b / m) for a, b in zip(bounds[:-1], bounds[1:])]


def radial_integral(m: float, r_max: float | None = None) -> float:
    """2 pi int_0^{r_max} r (Green's combination)(r, m) dr.

    Equals -1/(6 m^2) up to the truncation remainder; r_max defaults to
    40/m and must satisfy m r_max >= 20 so the e^{-2 m r} tail estimate
    is certifiably small.  A TruncationWarning reports a remainder
    estimate that is not negligible against the target value.
    """
    if not (m > 0.0 and math.isfinite(m)):
        raise DomainError(f"m must be positive and finite, got {m}")
    r_max = r_max if r_max is not None else 40.0 / m
    if m * r_max < 20.0:
        raise DomainError(
            f"m * r_max must be >= 20 for a certifiable tail, got {m * r_max}")
    gx, gw = _gl(24)
    total = 0.0
    for a, b in _greens_radial_panels(m, r_max):
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        acc = 0.0
        for t, w in zip(mid + half * gx, gw):
            acc += w * t * greens_combination(GreenParams(r=t, m=m),
                                              _LIGHT_CONTOUR)
        total += acc * half
    total *= 2.0 * math.pi
    # K_0^2 dominates the tail: |combination| <= e^{-2w}/(8 w) there
    remainder = math.pi / (8.0 * m * m) * math.exp(-2.0 * m * r_max)
    if remainder > 1e-8 * max(abs(total), 1e-3):
        warnings.warn(
            f"radial truncation remainder ~{remainder:.2e} is not "
            f"negligible at m r_max = {m * r_max}", TruncationWarning,
            stacklevel=2)
    return total
