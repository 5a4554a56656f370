"""Semi-infinite integrals of decaying-oscillatory Bessel products.

Strategy shared by all three integral families:

* finite part on [x, T]: Gauss-Legendre panels split at the integrand's
  zeros (zeros of J_0 Y_0 interlace those of J_0 and Y_0, both within
  O(1e-4) of their McMahon expansions, polished by Newton steps);
* tail beyond T: the Hankel product expansions reduce the integrand to
  sums of t^(-p) cos 2t and t^(-p) sin 2t, which integrate by parts in
  closed form via E_p = int_T^inf t^(-p) e^{2it} dt
  = (i/2) T^(-p) e^{2iT} - (i p / 2) E_{p+1},
  iterated tail_order times with the certified bound
  |E_q| <= T^(-q) on the dropped term;
* conditionally convergent lambda-integrals: finite part to a zero of
  cos(2 lambda r) past max(45/r, 3m), then half-period integrals whose
  alternating partial sums are accelerated by repeated averaging.

Every routine returns an Estimate(value, error_estimate) pair with the
error model built from the IBP remainder, the expansion-truncation term
and node-level rounding; plans whose budget cannot be met raise
BudgetError rather than returning uncertified digits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .backend import kernels as _k
from .bessel_core import _as_x
from .errors import (
    BudgetError,
    ConditionalConvergenceWarning,
    DomainError,
    NonConvergenceError,
)

_EPS = 2.220446049250313e-16


class Estimate(NamedTuple):
    """A quadrature result with its certified absolute error estimate."""

    value: float
    error_estimate: float


@dataclass(frozen=True)
class QuadraturePlan:
    """Panel/tail split for the oscillatory integrals.

    split_point:
        Finite-panel boundary T; the effective boundary is
        max(x, split_point) rounded up to a zero of cos 2t.
    panel_rule:
        Gauss-Legendre nodes per panel.
    zero_splitting:
        Split panels at integrand zeros (uniform half-period panels
        otherwise).
    tail_order:
        Integration-by-parts terms kept in the asymptotic tail.
    error_budget:
        Absolute bound the error estimate must meet.
    subdivide:
        Split every panel into this many equal parts (refinement tests).
    """

    split_point: float = 120.0
    panel_rule: int = 32
    zero_splitting: bool = True
    tail_order: int = 4
    error_budget: float = 1e-11
    subdivide: int = 1

    def __post_init__(self) -> None:
        if self.split_point < 40.0:
            raise DomainError(f"split_point must be >= 40, got {self.split_point}")
        if not (4 <= int(self.panel_rule) <= 64):
            raise DomainError(f"panel_rule must lie in [4, 64], got {self.panel_rule}")
        if int(self.tail_order) not in (1, 2, 3, 4):
            raise DomainError(f"tail_order must be 1..4, got {self.tail_order}")
        if not (self.error_budget > 0.0):
            raise DomainError("error_budget must be positive")
        if int(self.subdivide) < 1:
            raise DomainError("subdivide must be >= 1")


DEFAULT_PLAN = QuadraturePlan()

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


# ----------------------------------------------------------------------
# Hankel product expansions: J_n(t) Y_n(t) and J_n(t)^2 as
# (2/(pi t)) [ -A cos 2t + B sin 2t ]  and  (2/(pi t)) [ C +- (A sin 2t + B cos 2t) ]
# with A = (P^2-Q^2)/2, B = PQ, C = (P^2+Q^2)/2 in powers of 1/t.
# ----------------------------------------------------------------------

def _product_coeffs(n: int, degmax: int = 11):
    mu = 4.0 * n * n
    a = [1.0]
    for k in range(1, degmax + 2):
        a.append(a[-1] * (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k))
    p = np.zeros(degmax + 1)
    q = np.zeros(degmax + 1)
    for j in range(0, degmax + 1, 2):
        p[j] = (-1.0) ** (j // 2) * a[j]
    for j in range(1, degmax + 1, 2):
        q[j] = (-1.0) ** ((j - 1) // 2) * a[j]
    conv = lambda u, v: np.convolve(u, v)[: degmax + 1]
    pp, qq, pq = conv(p, p), conv(q, q), conv(p, q)
    A = 0.5 * (pp - qq)
    B = pq
    C = 0.5 * (pp + qq)
    return A, B, C


_A0, _B0, _C0 = _product_coeffs(0)


# ----------------------------------------------------------------------
# Integration-by-parts tail engine
# ----------------------------------------------------------------------

def _ibp_tail(terms: Sequence[tuple[int, float, float]], T: float, depth: int):
    """Integrate sum_j t^(-p_j) (c_j cos 2t + s_j sin 2t) over [T, inf).

    terms: (p, ccos, csin) with p >= 1.  Returns (value, remainder_bound).
    The dropped term satisfies |E_q| <= T^(-q): one further integration by
    parts gives |E_q| <= T^(-q)/2 + (q/2) int_T t^(-q-1) = T^(-q).
    """
    e2 = complex(math.cos(2.0 * T), math.sin(2.0 * T))
    value = 0.0
    rem = 0.0
    for p, cc, cs in terms:
        if cc == 0.0 and cs == 0.0:
            continue
        E = 0.0 + 0.0j
        mult = 1.0 + 0.0j
        pp = float(p)
        for _ in range(depth):
            E += mult * 0.5j * T ** (-pp) * e2
            mult *= -0.5j * pp
            pp += 1.0
        bound = abs(mult) * T ** (-pp)
        value += cc * E.real + cs * E.imag
        rem += (abs(cc) + abs(cs)) * bound
    return value, rem


def _round_up_to_cos_zero(t: float) -> float:
    # smallest (2k+1) pi/4 >= t
    k = math.ceil((4.0 * t / math.pi - 1.0) / 2.0)
    return (2 * max(k, 0) + 1) * math.pi / 4.0


# ----------------------------------------------------------------------
# Zero location for panel splitting
# ----------------------------------------------------------------------

def _j0y0_zeros(lo: float, hi: float) -> list[float]:
    # Zeros of J_0 near (k-1/4)pi and of Y_0 near (k-3/4)pi, refined by two
    # Newton steps (J_0' = -J_1, Y_0' = -Y_1).
    zeros: list[float] = []
    k = max(1, int(lo / math.pi))
    while True:
        bj = (k - 0.25) * math.pi
        by = (k - 0.75) * math.pi
        if by > hi + 1.0 and bj > hi + 1.0:
            break
        for kind, b in ((0, by), (1, bj)):
            if b < 0.5 or not (lo < b < hi):
                continue
            t = b + 1.0 / (8.0 * b)
            for _ in range(2):
                j0v, j1v, y0v, y1v = _k.jy01(t)
                t = t + (j0v / j1v if kind == 1 else y0v / y1v)
            if lo < t < hi:
                zeros.append(t)
        k += 1
    zeros.sort()
    return zeros


def _jn_zeros_coarse(n: int, lo: float, hi: float) -> list[float]:
    # McMahon first-order zeros of J_n; panel boundaries only, so ~1e-3
    # placement is ample.
    mu = 4.0 * n * n
    zeros = []
    k = 1
    while True:
        b = (k + 0.5 * n - 0.25) * math.pi
        if b > hi:
            break
        z = b - (mu - 1.0) / (8.0 * b)
        if lo < z < hi:
            zeros.append(z)
        k += 1
    return zeros


def _panelize(x: float, T: float, zeros: list[float], subdivide: int,
              zero_splitting: bool) -> list[tuple[float, float]]:
    if zero_splitting:
        bounds = [x] + [z for z in zeros if x < z < T] + [T]
    else:
        n = max(1, int(math.ceil((T - x) / (0.5 * math.pi))))
        bounds = list(np.linspace(x, T, n + 1))
    # geometric refinement of wide gaps (small x ahead of the first zero)
    walked = [bounds[0]]
    for b in bounds[1:]:
        a = walked[-1]
        if a > 0.0 and b / a > 3.0:
            nsep = int(math.ceil(math.log(b / a) / math.log(3.0)))
            ratio = (b / a) ** (1.0 / nsep)
            for i in range(1, nsep):
                walked.append(a * ratio ** i)
        walked.append(b)
    bounds = walked
    panels = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        if subdivide == 1:
            panels.append((a, b))
        else:
            edges = np.linspace(a, b, subdivide + 1)
            panels.extend(zip(edges[:-1], edges[1:]))
    return panels


# ----------------------------------------------------------------------
# Public integrals
# ----------------------------------------------------------------------

def integral_j0y0_tail(point, plan: QuadraturePlan | None = None) -> Estimate:
    """int_x^inf J_0(t) Y_0(t) / t^2 dt with certified error estimate."""
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"integral requires x > 0, got {x}")
    plan = plan if plan is not None else DEFAULT_PLAN
    T = _round_up_to_cos_zero(max(x, plan.split_point))
    gx, gw = _gl(int(plan.panel_rule))
    finite = 0.0
    absacc = 0.0
    for a, b in _panelize(x, T, _j0y0_zeros(x, T), int(plan.subdivide),
                          plan.zero_splitting):
        pv = _k.panel_j0y0_t2(a, b, gx, gw)
        finite += pv
        absacc += abs(pv)
    # J_0 Y_0 / t^2 = (2/(pi t^3)) (-A cos 2t + B sin 2t): degree d maps to
    # power 3 + d.
    terms = []
    for d in range(len(_A0)):
        if _A0[d] != 0.0:
            terms.append((3 + d, -(2.0 / math.pi) * _A0[d], 0.0))
        if _B0[d] != 0.0:
            terms.append((3 + d, 0.0, (2.0 / math.pi) * _B0[d]))
    tail, rem = _ibp_tail(terms, T, int(plan.tail_order))
    # expansion truncation: first dropped coefficient pair
    rem += (2.0 / math.pi) * (abs(_A0[-1]) + abs(_B0[-1])) * T ** (-len(_A0) - 2)
    est = rem + 40.0 * _EPS * absacc + 4.0 * _EPS * abs(finite + tail)
    if est > plan.error_budget:
        raise BudgetError(
            f"j0y0 tail integral achieved {est:.3e} > budget {plan.error_budget:.3e}",
            achieved=est, budget=plan.error_budget,
        )
    return Estimate(finite + tail, est)


def _jnsq_sign(n: int) -> float:
    return -1.0 if n % 2 else 1.0


def integral_jnsq_over_t(n: int, point, plan: QuadraturePlan | None = None) -> Estimate:
    """int_x^inf J_n(t)^2 / t dt for integer 0 <= n <= 6."""
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"integral requires x > 0, got {x}")
    if not (0 <= n <= 6):
        raise DomainError(f"order must be 0..6, got {n}")
    plan = plan if plan is not None else DEFAULT_PLAN
    # IBP starts at p = 2 here, so the default boundary moves out to keep
    # the depth-4 remainder below the 1e-11 budget.
    T = _round_up_to_cos_zero(max(x, plan.split_point, 144.0))
    gx, gw = _gl(int(plan.panel_rule))
    zeros = _jn_zeros_coarse(n, x, T)
    finite = 0.0
    absacc = 0.0
    for a, b in _panelize(x, T, zeros, int(plan.subdivide), plan.zero_splitting):
        pv = _k.panel_jnsq_t(n, a, b, gx, gw)
        finite += pv
        absacc += abs(pv)
    A, B, C = (_A0, _B0, _C0) if n == 0 else _product_coeffs(n)
    sg = _jnsq_sign(n)
    # mean part integrates exactly: (2/pi) C_d t^(-(2+d)) -> T^(-(1+d))/(1+d)
    mean = 0.0
    for d in range(len(C)):
        if C[d] != 0.0:
            mean += (2.0 / math.pi) * C[d] * T ** (-(1 + d)) / (1 + d)
    terms = []
    for d in range(len(A)):
        if A[d] != 0.0:
            terms.append((2 + d, 0.0, sg * (2.0 / math.pi) * A[d]))
        if B[d] != 0.0:
            terms.append((2 + d, sg * (2.0 / math.pi) * B[d], 0.0))
    tail, rem = _ibp_tail(terms, T, int(plan.tail_order))
    rem += (2.0 / math.pi) * (abs(A[-1]) + abs(B[-1]) + abs(C[-1])) * T ** (-len(A) - 1)
    est = rem + 40.0 * _EPS * absacc + 4.0 * _EPS * abs(finite + mean + tail)
    if est > plan.error_budget:
        raise BudgetError(
            f"jnsq integral achieved {est:.3e} > budget {plan.error_budget:.3e}",
            achieved=est, budget=plan.error_budget,
        )
    return Estimate(finite + mean + tail, est)


def integral_j0sq_over_t(point, plan: QuadraturePlan | None = None) -> Estimate:
    """int_x^inf J_0(t)^2 / t dt."""
    return integral_jnsq_over_t(0, point, plan)


# ----------------------------------------------------------------------
# Conditionally convergent lambda-integrals
# ----------------------------------------------------------------------

def _averaged_limit(seq: list[float]) -> tuple[float, float]:
    # Repeated averaging of the partial sums of an alternating sequence
    # (van Wijngaarden); the change contributed by the deepest averaging
    # level is the convergence meter.
    s = list(np.cumsum(seq))
    levels = min(len(s) - 1, 14)
    end = s[-1]
    change = abs(end)
    for _ in range(levels):
        s = [0.5 * (s[i] + s[i + 1]) for i in range(len(s) - 1)]
        change = abs(s[-1] - end)
        end = s[-1]
    return end, change + 4.0 * _EPS * abs(end)


def _batch_kernel_values(kernel, us: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Kernel objects may expose batch(us) -> (values, error_estimates);
    # plain callables are evaluated pointwise with zero assumed error.
    if hasattr(kernel, "batch"):
        vals, errs = kernel.batch(us)
        return np.asarray(vals, dtype=float), np.asarray(errs, dtype=float)
    vals = np.fromiter((float(kernel(u)) for u in us), dtype=float, count=len(us))
    return vals, np.zeros_like(vals)


def lambda_kernel_integral(
    r: float,
    m: float,
    kernel: Callable[[float], float],
    power: float,
    *,
    numerator_power: int = 1,
    plan: QuadraturePlan | None = None,
) -> Estimate:
    """int_0^inf kernel(lambda r) lambda^numerator_power /
    (lambda^2 + m^2)^power  d lambda.

    The finite part runs to a zero of cos(2 lambda r) past
    max(45/r, 3m); the remainder is summed by half-periods with repeated
    averaging.  kernel may be a plain callable or expose
    batch(us) -> (values, errors) for vectorized evaluation.
    """
    if not (r > 0.0 and m > 0.0):
        raise DomainError(f"require r > 0 and m > 0, got r={r}, m={m}")
    if power <= 0.0:
        raise DomainError(f"power must be positive, got {power}")
    if numerator_power < 0 or int(numerator_power) != numerator_power:
        raise DomainError(f"numerator_power must be integer >= 0, got {numerator_power}")
    plan = plan if plan is not None else DEFAULT_PLAN

    # decay probe: power = 1 integrands converge only through oscillatory
    # cancellation unless the kernel itself decays
    probe = max(abs(float(kernel(u))) for u in (80.0, 160.0, 320.0))
    if power == 1.0 and numerator_power >= 1 and probe > 0.02:
        warnings.warn(
            "kernel shows no decay at large argument; the integral is at "
            "best conditionally convergent",
            ConditionalConvergenceWarning,
            stacklevel=2,
        )
    if probe == 0.0 and kernel(1.0) == 0.0 and kernel(17.3) == 0.0:
        return Estimate(0.0, 0.0)

    half = 0.5 * math.pi / r              # half-period of cos(2 lambda r)
    t_target = max(45.0 / r, 3.0 * m)
    k = math.ceil((4.0 * t_target * r / math.pi - 1.0) / 2.0)
    T = (2 * max(k, 0) + 1) * math.pi / (4.0 * r)

    # panel boundaries: oscillation grid + dyadic pole grid + kernel switch
    # points, then a length cap that keeps Gauss panels short relative to
    # their distance from the pole at i m
    bset = {0.0, T}
    lam = half
    while lam < T:
        bset.add(lam)
        lam += half
    for j in (-3, -2, -1, 0, 1, 2):
        p = m * 2.0 ** j
        if 0.0 < p < T:
            bset.add(p)
    for p in (0.5 / r, 45.0 / r):
        if 0.0 < p < T:
            bset.add(p)
    bounds = sorted(bset)
    refined: list[float] = [bounds[0]]
    for b in bounds[1:]:
        a = refined[-1]
        cap = max(1.6 * max(a, 0.125 * m), 1e-8)
        gap = b - a
        if gap > cap:
            parts = int(math.ceil(gap / cap))
            for i in range(1, parts):
                refined.append(a + gap * i / parts)
        refined.append(b)

    ng = int(plan.panel_rule)
    gx, gw = _gl(ng)
    a_arr = np.asarray(refined[:-1])
    b_arr = np.asarray(refined[1:])
    mids = 0.5 * (a_arr + b_arr)
    halfs = 0.5 * (b_arr - a_arr)
    lam_nodes = (mids[:, None] + halfs[:, None] * gx[None, :]).ravel()
    w_nodes = (halfs[:, None] * gw[None, :]).ravel()

    kvals, kerrs = _batch_kernel_values(kernel, lam_nodes * r)
    rational = lam_nodes ** numerator_power / (lam_nodes * lam_nodes + m * m) ** power
    finite = float(np.sum(w_nodes * kvals * rational))
    kprop = float(np.sum(np.abs(w_nodes * rational) * kerrs))
    absacc = float(np.sum(np.abs(w_nodes * kvals * rational)))

    # tail: one Gauss panel per half-period, then repeated averaging
    npairs = 40
    tg_x, tg_w = _gl(16)
    edges = T + half * np.arange(npairs + 1)
    tmids = 0.5 * (edges[:-1] + edges[1:])
    thalfs = np.full(npairs, 0.5 * half)
    tnodes = (tmids[:, None] + thalfs[:, None] * tg_x[None, :]).ravel()
    tw = (thalfs[:, None] * tg_w[None, :]).ravel()
    tkv, tke = _batch_kernel_values(kernel, tnodes * r)
    trat = tnodes ** numerator_power / (tnodes * tnodes + m * m) ** power
    contrib = (tw * tkv * trat).reshape(npairs, 16).sum(axis=1)
    # Repeated averaging is only legitimate when consecutive half-period
    # contributions alternate in sign; a same-sign (monotone) tail gets no
    # acceleration, so it is summed plainly with the envelope remainder
    # bound max|kernel| * Lambda^-(2 power - numerator_power - 1) / (...).
    signs = np.sign(contrib)
    pair_ok = (signs[1:] != 0.0) & (signs[:-1] != 0.0)
    flips = signs[1:][pair_ok] * signs[:-1][pair_ok]
    alternating = flips.size == 0 or float(np.mean(flips < 0.0)) >= 0.75
    if alternating:
        tail, tail_err = _averaged_limit(list(contrib))
    else:
        decay = 2.0 * power - numerator_power - 1.0
        if decay <= 0.0:
            raise NonConvergenceError(
                "tail contributions do not alternate and the rational factor "
                "alone does not decay: the integral has no certifiable value")
        lam_end = float(edges[-1])
        kmax = float(np.max(np.abs(tkv)))
        tail = float(np.sum(contrib))
        tail_err = kmax * lam_end ** (-decay) / decay + 4.0 * _EPS * abs(tail)
    kprop += float(np.sum(np.abs(tw * trat) * tke))

    est = tail_err + kprop + 40.0 * _EPS * absacc + 4.0 * _EPS * abs(finite + tail)
    if est > plan.error_budget:
        raise BudgetError(
            f"lambda integral achieved {est:.3e} > budget {plan.error_budget:.3e}",
            achieved=est, budget=plan.error_budget,
        )
    return Estimate(finite + tail, est)
