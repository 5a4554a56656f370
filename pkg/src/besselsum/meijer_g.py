"""Meijer G evaluation by direct Mellin-Barnes contour quadrature.

Only the two parameter sets the closed forms need are supported:

    G20(z) = G^{2,0}_{1,3}(z | 1; -1/2, -1/2, -1/2)
           = (1/2 pi i) int_L Gamma(-1/2-s)^2 / (Gamma(3/2+s) Gamma(1-s)) z^s ds
    G30(z) = G^{3,0}_{1,3}(z | 1; -1/2, -1/2, -1/2)
           = (1/2 pi i) int_L Gamma(-1/2-s)^3 / Gamma(1-s) z^s ds

with L the vertical line Re s = c passing left of the pole ladder
s = -1/2 + k of the Gamma(-1/2 - s) factors.  The repeated b-parameters
make those poles double and triple, which rules out a naive residue
series but is harmless to a contour that never touches them; trapezoidal
summation along the line is spectrally accurate because the integrand is
analytic in a strip of half-width |c + 1/2| around it.

The G30 integrand decays like e^{-pi |Im s|} and dies long before the
cutoff.  The G20 integrand decays only algebraically (|Im s|^-2), so the
truncated sum is completed by Euler-Maclaurin endpoint corrections plus
two integration-by-parts terms for the remaining tail, with the first
dropped term kept as the truncation estimate.

Following Schwarz reflection, node pairs s and conj(s) contribute
conjugate values; the assembled result is real up to rounding and its
imaginary residue is reported as an error meter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .backend import kernels as _k
from .errors import (
    AmbiguousNormalizationError,
    BudgetError,
    DomainError,
    MisplacedContourError,
)

_TWO_SQRT_PI = 2.0 * math.sqrt(math.pi)


@dataclass(frozen=True)
class MeijerGSpec:
    """Meijer G order/parameter bundle (m, n, p, q, a_list, b_list)."""

    m: int
    n: int
    p: int
    q: int
    a_list: tuple
    b_list: tuple

    def __post_init__(self) -> None:
        if not (0 <= self.n <= self.p and 0 <= self.m <= self.q):
            raise DomainError("need 0 <= n <= p and 0 <= m <= q")
        if len(self.a_list) != self.p or len(self.b_list) != self.q:
            raise DomainError("parameter list lengths must match p and q")

    @property
    def kind(self) -> int:
        # Gamma multiplicity of the b-ladder: the only trait the contour
        # integrand needs once restricted to the supported cases.
        if (self.m, self.n, self.p, self.q) == (2, 0, 1, 3) and \
                self.a_list == (1.0,) and self.b_list == (-0.5, -0.5, -0.5):
            return 2
        if (self.m, self.n, self.p, self.q) == (3, 0, 1, 3) and \
                self.a_list == (1.0,) and self.b_list == (-0.5, -0.5, -0.5):
            return 3
        raise DomainError(
            f"unsupported Meijer G parameters {(self.m, self.n, self.p, self.q)} "
            f"a={self.a_list} b={self.b_list}")


G20_SPEC = MeijerGSpec(2, 0, 1, 3, (1.0,), (-0.5, -0.5, -0.5))
G30_SPEC = MeijerGSpec(3, 0, 1, 3, (1.0,), (-0.5, -0.5, -0.5))


@dataclass(frozen=True)
class ContourConfig:
    """Vertical contour Re s = real_part, truncated at |Im s| = im_cutoff,
    sampled at node_density nodes per unit imaginary length."""

    real_part: float = -0.75
    im_cutoff: float = 200.0
    node_density: float = 40.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.real_part):
            raise DomainError("real_part must be finite")
        if not (self.im_cutoff >= 10.0):
            raise DomainError(f"im_cutoff must be >= 10, got {self.im_cutoff}")
        if not (self.node_density >= 8.0):
            raise DomainError(
                f"node_density must be >= 8, got {self.node_density}")


DEFAULT_CONTOUR = ContourConfig()


def _check_contour(c: float, b_list: tuple, delta: float) -> None:
    bmin = min(b_list)
    if not (c < bmin):
        raise MisplacedContourError(
            f"contour Re s = {c} must pass strictly left of the pole "
            f"ladder starting at {bmin}")
    # every pole s = b_j + k, k >= 0, must clear the line by a node spacing
    for b in set(b_list):
        dist = b - c  # c < b, ladder only extends rightward
        if dist < delta:
            raise MisplacedContourError(
                f"pole at s = {b} lies within one node spacing "
                f"({delta:.4g}) of the contour Re s = {c}")


def _phi_prime(kind: int, c: float, tau: float, lnz: float) -> complex:
    # d/dtau log g(c + i tau) = i [ -mult psi(-1/2-s) - extra + ln z ]
    if kind == 2:
        ms = (-2.0 * _k.cdigamma(-0.5 - c, -tau)
              - _k.cdigamma(1.5 + c, tau)
              + _k.cdigamma(1.0 - c, -tau) + lnz)
    else:
        ms = (-3.0 * _k.cdigamma(-0.5 - c, -tau)
              + _k.cdigamma(1.0 - c, -tau) + lnz)
    return 1j * ms


def _assemble(kind: int, z: float, contour: ContourConfig):
    """Contour sum plus endpoint corrections.

    Returns (value, imag_residue, truncation_estimate); the value is the
    real part of the assembled integral divided by 2 pi.
    """
    if not (z > 0.0 and math.isfinite(z)):
        raise DomainError(f"z must be positive and finite, got {z}")
    c = contour.real_part
    delta = 1.0 / contour.node_density
    _check_contour(c, (-0.5,), delta)
    lnz = math.log(z)
    nmax = int(round(contour.im_cutoff * contour.node_density))
    lam = nmax * delta
    s_in = _k.contour_sum(kind, c, lnz, delta, nmax)

    g_lam = _k.contour_integrand(kind, c, lam, lnz)
    h = 0.5 * delta
    g_p = _k.contour_integrand(kind, c, lam + h, lnz)
    g_m = _k.contour_integrand(kind, c, lam - h, lnz)
    g_p2 = _k.contour_integrand(kind, c, lam + 2.0 * h, lnz)
    g_m2 = _k.contour_integrand(kind, c, lam - 2.0 * h, lnz)
    pp = _phi_prime(kind, c, lam, lnz)
    # g' = g phi' exactly; g''' by differences is accurate enough for its
    # delta^4 weight
    gp = g_lam * pp
    gppp = (g_p2 - 2.0 * g_p + 2.0 * g_m - g_m2) / (2.0 * h ** 3)

    # tail int_lam^inf g dtau by parts twice: u1 = -(1/phi')' by central
    # differences (phi' varies on the ln|tau| scale, so h = delta/2 is
    # far inside its resolution)
    u1 = -(1.0 / _phi_prime(kind, c, lam + h, lnz)
           - 1.0 / _phi_prime(kind, c, lam - h, lnz)) / (2.0 * h)
    t1 = -g_lam / pp
    t2 = -g_lam * u1 / pp
    # Euler-Maclaurin completion of the truncated trapezoid sum:
    # int_{-inf}^{inf} = sum_in + 2 Re[ tail - (d/2) g - (d^2/12) g' + (d^4/720) g''' ]
    corr = (t1 + t2) - 0.5 * delta * g_lam \
        - (delta ** 2 / 12.0) * gp + (delta ** 4 / 720.0) * gppp
    total = s_in + 2.0 * corr.real
    value = total.real / (2.0 * math.pi)
    imag_residue = total.imag / (2.0 * math.pi)
    # next dropped IBP term is ~ |t2| again; fold the realness defect in
    trunc_est = 2.0 * abs(t2) / (2.0 * math.pi) + abs(imag_residue)
    return value, imag_residue, trunc_est


def mellin_barnes_eval(spec: MeijerGSpec, z: float,
                       contour: ContourConfig | None = None) -> float:
    """Evaluate the Meijer G function for one of the two supported specs.

    Raises MisplacedContourError for contours that touch or cross the
    pole ladder, and BudgetError when the truncation estimate at the
    im_cutoff endpoint is too large for a trustworthy result.
    """
    contour = contour if contour is not None else DEFAULT_CONTOUR
    value, imag_residue, trunc_est = _assemble(spec.kind, z, contour)
    if trunc_est > 1e-8 * max(1.0, abs(value)):
        raise BudgetError(
            f"contour truncation estimate {trunc_est:.3e} at im_cutoff "
            f"{contour.im_cutoff} is above budget; raise im_cutoff",
            achieved=trunc_est, budget=1e-8 * max(1.0, abs(value)))
    return value


def meijer_g20(z: float, contour: ContourConfig | None = None) -> float:
    """G^{2,0}_{1,3}(z | 1; -1/2,-1/2,-1/2)."""
    return mellin_barnes_eval(G20_SPEC, z, contour)


def meijer_g30(z: float, contour: ContourConfig | None = None) -> float:
    """G^{3,0}_{1,3}(z | 1; -1/2,-1/2,-1/2)."""
    return mellin_barnes_eval(G30_SPEC, z, contour)


@dataclass(frozen=True)
class NormalizationReport:
    """Outcome of testing both candidate normalizations of the identity
    int_x^inf J_0 Y_0 / t^2 dt  ~  G20(x^2)."""

    x: float
    integral_value: float
    g_value: float
    residual_bare: float
    residual_prefactored: float
    matched: str
    residual: float


def verify_mellin_identity(x: float,
                           contour: ContourConfig | None = None) -> NormalizationReport:
    """Decide which normalization ties G20(x^2) to the J_0 Y_0 integral.

    Candidates: the bare value G20(x^2) and -G20(x^2)/(2 sqrt(pi)).
    Exactly one must reproduce integral_j0y0_tail(x) within 1e-6;
    anything else raises AmbiguousNormalizationError.
    """
    if not (0.2 <= x <= 20.0):
        raise DomainError(f"verify_mellin_identity covers x in [0.2, 20], got {x}")
    from .oscillatory_quadrature import integral_j0y0_tail

    integral = integral_j0y0_tail(x).value
    g_value = meijer_g20(x * x, contour)
    residual_bare = abs(integral - g_value)
    residual_pref = abs(integral - (-g_value / _TWO_SQRT_PI))
    bare_ok = residual_bare <= 1e-6
    pref_ok = residual_pref <= 1e-6
    if bare_ok == pref_ok:
        raise AmbiguousNormalizationError(
            f"normalization undecided at x={x}: bare residual "
            f"{residual_bare:.3e}, prefactored residual {residual_pref:.3e}")
    if pref_ok:
        matched, residual = "-G/(2 sqrt(pi))", residual_pref
    else:
        matched, residual = "bare G", residual_bare
    return NormalizationReport(
        x=x, integral_value=integral, g_value=g_value,
        residual_bare=residual_bare, residual_prefactored=residual_pref,
        matched=matched, residual=residual)
