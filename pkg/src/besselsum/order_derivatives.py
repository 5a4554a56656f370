"""Order derivatives Jhat_n(x) = dJ_nu(x)/dnu at integer nu = n.

Two independent routes:

``jhat``
    Central finite differences in nu with Richardson extrapolation.  The
    stencil is pinned to a single evaluation regime so the difference never
    straddles a method switch.  For n = 0 the stencil needs J at slightly
    negative order; below the series cutoff the series handles nu in (-1, 0)
    directly, elsewhere the reflection
    J_{-v} = cos(pi v) J_v - sin(pi v) Y_v supplies it.

``jhat_closed_integer``
    Closed forms.  n = 0 is exactly (pi/2) Y_0(x).  For n >= 1 there are two
    expressions with complementary stability:

    * the companion-sum form
      (pi/2) Y_n + (n!/2) sum_{k<n} (x/2)^{k-n} J_k / (k! (n-k)),
      whose sum cancels against (pi/2) Y_n when x is small or n far exceeds
      x (both pieces grow like (2/x)^n while the answer stays bounded);
    * the logarithmic series
      sum_k (-1)^k (x/2)^{n+2k} [ln(x/2) - psi(n+k+1)] / (k! (n+k)!),
      whose terms reach ~ I_n(x) in absolute value before collapsing to a
      result of order J_n(x), so it loses digits once x is large relative
      to n.

    Each branch carries an explicit cancellation estimate and raises
    PrecisionLossError instead of returning digits it cannot back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import kernels as _k
from .errors import DomainError, PrecisionLossError
from .bessel_core import _as_x

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class NuDerivativeConfig:
    """Finite-difference step and Richardson depth for d/dnu stencils."""

    fd_step: float = 1e-5
    richardson_levels: int = 2

    def __post_init__(self) -> None:
        if not (0.0 < self.fd_step <= 1e-3):
            raise DomainError(f"fd_step must lie in (0, 1e-3], got {self.fd_step}")
        if self.richardson_levels not in (1, 2, 3):
            raise DomainError(
                f"richardson_levels must be 1, 2 or 3, got {self.richardson_levels}"
            )


DEFAULT_FD = NuDerivativeConfig()


def _j_signed_order(nu: float, x: float, method: int) -> float:
    # J_nu for possibly negative nu (|nu| < 1 only, as used by stencils).
    if nu >= 0.0:
        return _k.jnu(nu, x, method)
    if method == _k.REGIME_SERIES:
        return _k.jnu(nu, x, _k.REGIME_SERIES)
    v = -nu
    jv, yv = _k.jynu(v, x, method)
    return math.cos(math.pi * v) * jv - math.sin(math.pi * v) * yv


def _central(n: float, x: float, h: float, method: int) -> float:
    return (_j_signed_order(n + h, x, method) - _j_signed_order(n - h, x, method)) / (2.0 * h)


def jhat(n: int, point, config: NuDerivativeConfig | None = None) -> float:
    """dJ_nu/dnu at nu = n >= 0, by Richardson-extrapolated differences."""
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"jhat requires x > 0, got {x}")
    if n < 0 or int(n) != n:
        raise DomainError(f"jhat requires integer n >= 0, got {n}")
    cfg = config if config is not None else DEFAULT_FD
    method = _k.jnu_regime(float(n), x)
    h = cfg.fd_step
    d0 = _central(float(n), x, h, method)
    if cfg.richardson_levels == 1:
        return d0
    d1 = _central(float(n), x, 0.5 * h, method)
    r01 = (4.0 * d1 - d0) / 3.0
    if cfg.richardson_levels == 2:
        return r01
    d2 = _central(float(n), x, 0.25 * h, method)
    r11 = (4.0 * d2 - d1) / 3.0
    return (16.0 * r11 - r01) / 15.0


def _jhat_log_series(n: int, x: float) -> float:
    # sum_k (-1)^k (x/2)^{n+2k} [ln(x/2) - psi(n+k+1)] / (k! (n+k)!)
    # psi(m+1) = -gamma + H_m.
    lx = math.log(0.5 * x)
    q = 0.25 * x * x
    # t_k = (x/2)^{n+2k} / (k! (n+k)!) built iteratively from t_0.
    t = math.exp(n * lx - math.lgamma(n + 1.0))
    h_nk = sum(1.0 / j for j in range(1, n + 1))  # H_n
    psi = -0.5772156649015328606065121 + h_nk
    total = t * (lx - psi)
    k = 1
    while k < 400:
        t *= -q / (k * (n + k))
        psi += 1.0 / (n + k)
        term = t * (lx - psi)
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-280) and abs(t) < abs(total) + 1.0:
            break
        k += 1
    return total


def _log_series_cancellation(n: int, x: float) -> float:
    # The absolute-value series sums to ~ I_n(x) |ln-factor|; the result is
    # ~ Jhat_n(x).  Lost precision ~ eps * I_n(x), with
    # ln I_n(x) ~ sqrt(n^2+x^2) - n asinh(n/x) (uniform large-order form).
    if x <= 0.0:
        return 0.0
    e = math.sqrt(n * n + x * x) - (n * math.asinh(n / x) if n > 0 else 0.0)
    return _EPS * 5.0 * math.exp(e) / math.sqrt(2.0 * math.pi * max(n, 1))


def jhat_closed_integer(n: int, point) -> float:
    """Closed-form dJ_nu/dnu at integer nu = n.

    Raises PrecisionLossError when neither closed expression can certify
    ~1e-10 absolute accuracy at (n, x); callers then fall back to ``jhat``.
    """
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"jhat_closed_integer requires x > 0, got {x}")
    if n < 0 or int(n) != n:
        raise DomainError(f"jhat_closed_integer requires integer n >= 0, got {n}")
    n = int(n)
    if n == 0:
        return 0.5 * math.pi * _k.y0(x)
    # Companion-sum form: stable once the sum's terms stay modest, i.e. x
    # comfortably large and n not too far above x.
    if x >= 9.0 and n <= x + 2.0 * x ** (1.0 / 3.0):
        yn = _k.yn_upward(n, x)
        jbuf = np.empty(n)
        _k.j_array(x, n - 1, jbuf)
        lhalf = math.log(0.5 * x)
        corr = 0.0
        peak = 0.0
        for k in range(n):
            w = math.exp(math.lgamma(n + 1.0) - math.lgamma(k + 1.0) + (k - n) * lhalf)
            term = 0.5 * w * jbuf[k] / (n - k)
            corr += term
            peak = max(peak, abs(term))
        if peak > 1e12:
            raise PrecisionLossError(
                f"companion-sum terms reach {peak:.2e} at n={n}, x={x}"
            )
        # Rounding in the sum is ~ eps * peak; refuse before it can eat
        # into the certified 1e-10 (happens only near the band edge for
        # x beyond ~60).
        if peak * 4.0 * _EPS > 1e-10:
            raise PrecisionLossError(
                f"companion-sum cancellation ~{peak * 4.0 * _EPS:.1e} "
                f"at n={n}, x={x}"
            )
        return 0.5 * math.pi * yn + corr
    est = _log_series_cancellation(n, x)
    if est <= 1e-10:
        return _jhat_log_series(n, x)
    raise PrecisionLossError(
        f"no closed form holds 1e-10 at n={n}, x={x} (cancellation ~{est:.1e})"
    )
