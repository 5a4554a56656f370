"""Double-precision Bessel functions J_nu, Y_n, K_0 with regime switching.

Evaluation strategy, by argument size:

* power series below ``series_cutoff`` (or whenever x^2 <= 1.8 (nu+1),
  where the series terms decay from the start and lose nothing);
* Steed's continued-fraction method in the intermediate band;
* Hankel asymptotic expansions above ``asymptotic_cutoff`` for small
  orders, where the expansions reach machine accuracy before their
  divergent tails set in.

Integer-order J and the Y companion functions use Miller-type backward
recurrence with the Neumann normalization instead of the series, which
keeps absolute accuracy near 1e-15 across the whole intermediate band.
The three regimes overlap, and the overlap agreement is part of the test
suite.  All arithmetic is binary64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .backend import kernels as _k
from .errors import DomainError, NonConvergenceError


@dataclass(frozen=True)
class EvalPoint:
    """A dimensionless positive evaluation argument."""

    x: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.x) or self.x < 0.0:
            raise DomainError(f"evaluation point must be finite and >= 0, got {self.x}")


@dataclass(frozen=True)
class Order:
    """A real Bessel order nu >= 0, with its integrality recorded."""

    nu: float
    integer: bool = field(default=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.nu) or self.nu < 0.0:
            raise DomainError(f"order must be finite and >= 0, got {self.nu}")
        is_int = float(self.nu).is_integer()
        object.__setattr__(self, "integer", is_int)


@dataclass(frozen=True)
class RegimeConfig:
    """Cutoffs between the series, recurrence/continued-fraction and
    asymptotic regimes.  The defaults are tuned so every regime meets the
    1e-13 absolute target inside its band; the bands overlap for
    cross-checking."""

    series_cutoff: float = 5.0
    asymptotic_cutoff: float = 25.0
    uniform_region: tuple[float, float] = (5.0, 25.0)

    def __post_init__(self) -> None:
        if not (0.0 < self.series_cutoff < self.asymptotic_cutoff):
            raise DomainError("require 0 < series_cutoff < asymptotic_cutoff")
        lo, hi = self.uniform_region
        if not (lo <= self.series_cutoff and hi >= self.asymptotic_cutoff * 0.99):
            raise DomainError("uniform_region must bridge the series and asymptotic bands")


DEFAULT_REGIMES = RegimeConfig()


def _as_x(point) -> float:
    if isinstance(point, EvalPoint):
        return point.x
    x = float(point)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"evaluation point must be finite and >= 0, got {x}")
    return x


def _as_nu(order) -> float:
    if isinstance(order, Order):
        return order.nu
    nu = float(order)
    if not math.isfinite(nu):
        raise DomainError(f"order must be finite, got {nu}")
    return nu


def regime_for(nu: float, x: float, config: RegimeConfig = DEFAULT_REGIMES) -> int:
    """Method selector: 1 series, 2 continued fraction, 3 asymptotic."""
    if x < config.series_cutoff or x * x <= 1.8 * (nu + 1.0):
        return _k.REGIME_SERIES
    if nu <= 3.5 and x >= config.asymptotic_cutoff:
        return _k.REGIME_HANKEL
    return _k.REGIME_STEED


def bessel_j(order, point, config: RegimeConfig | None = None) -> float:
    """J_nu(x) for nu >= 0, x >= 0; absolute error <= 1e-13 for
    x <= 50, nu <= 60."""
    nu = _as_nu(order)
    x = _as_x(point)
    if nu < 0.0:
        raise DomainError(f"bessel_j requires order >= 0, got {nu}")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if config is None:
        v = _k.jnu(nu, x, 0)
    else:
        v = _k.jnu(nu, x, regime_for(nu, x, config))
    if not math.isfinite(v):
        raise NonConvergenceError(f"J_nu evaluation failed at nu={nu}, x={x}")
    return v


def bessel_y(order, point) -> float:
    """Y_n(x) for integer n >= 0, x > 0."""
    nu = _as_nu(order)
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"bessel_y requires x > 0, got {x}")
    if nu < 0.0 or not float(nu).is_integer():
        raise DomainError(f"bessel_y requires a nonnegative integer order, got {nu}")
    v = _k.yn_upward(int(nu), x)
    if not math.isfinite(v):
        raise NonConvergenceError(f"Y_n overflowed at n={int(nu)}, x={x}")
    return v


def bessel_k0(point) -> float:
    """K_0(x) for x > 0, relative error <= 1e-12."""
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"bessel_k0 requires x > 0, got {x}")
    return _k.k0(x)


def bessel_k1(point) -> float:
    """K_1(x) for x > 0 (companion used by derivative checks)."""
    x = _as_x(point)
    if x <= 0.0:
        raise DomainError(f"bessel_k1 requires x > 0, got {x}")
    return _k.k1(x)
