"""Named verification checks over every module's invariants.

Each check computes a scalar residual and compares it against its
tolerance; `run_checks` returns one record per check, in registry
order, with the measured residual included so that reports are
reproducible byte for byte.  The registry is the single source of
truth for check names, and those names are the only keys accepted in
tolerance-override maps.

Two asymptote checks are deliberately paired.  `q_asymptote` tests the
classical display q(x) ~ -cos(2x)/x and fails: the kernel's measured
envelope is -cos(2x)/(2x), half that display, as `q_asymptote_halved`
confirms by passing with two orders of margin.  The failing check is
kept as specified so the discrepancy stays visible in every report
rather than being silently recalibrated.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np

from .backend import kernels as _k
from .bessel_core import EvalPoint
from .entropy_kernels import (
    GreenParams,
    greens_combination,
    greens_combination_quadrature,
    p_closed,
    p_closed_meijer,
    perturbative_diagonal_term,
    q,
    q_product_form,
    radial_integral,
)
from .errors import DomainError
from .meijer_g import verify_mellin_identity
from .order_derivatives import jhat
from .oscillatory_quadrature import integral_j0sq_over_t, integral_jnsq_over_t
from .resolvent_coeffs import (
    CoeffIndex,
    DerivGenerator,
    SymbolicPolynomial,
    compute_b,
    monomial_weights,
    reality_report,
)
from .series_sums import lommel_tail, p_direct, sum_jjhat, sum_squares_all


def main_grid() -> np.ndarray:
    """The 40-point logarithmic grid on [0.1, 40] used by the suite."""
    return np.geomspace(0.1, 40.0, 40)


def _check_main_theorem() -> Tuple[float, str]:
    worst = 0.0
    worst_x = 0.0
    for x in main_grid():
        dev = abs(p_direct(EvalPoint(float(x))) - p_closed(EvalPoint(float(x))))
        if dev > worst:
            worst, worst_x = dev, float(x)
    return worst, f"max |p_direct - p_closed| at x={worst_x:.6g}"


def _check_order_derivative_anchor() -> Tuple[float, str]:
    worst = 0.0
    worst_x = 0.0
    for x in main_grid():
        xf = float(x)
        dev = abs(jhat(0, EvalPoint(xf)) - 0.5 * math.pi * _k.jy01(xf)[2])
        if dev > worst:
            worst, worst_x = dev, xf
    return worst, f"max |jhat(0,x) - (pi/2) Y_0(x)| at x={worst_x:.6g}"


def _check_p_limit() -> Tuple[float, str]:
    worst = 0.0
    for x in (20.0, 50.0, 100.0, 200.0):
        worst = max(worst, abs(p_closed(EvalPoint(x)) + 0.25) * x)
    return worst, "max |p_closed(x) + 1/4| * x over {20,50,100,200}"


def _check_q_anchor() -> Tuple[float, str]:
    value = float(q(EvalPoint(1e-3)))
    return abs(value + 1.0), f"q(1e-3) = {value!r}"


def _check_q_asymptote() -> Tuple[float, str]:
    worst = 0.0
    for x in (40.0, 60.0, 80.0):
        worst = max(worst, abs(q(EvalPoint(x)) * x + math.cos(2.0 * x)) * x)
    return worst, (
        "max |q(x) x + cos 2x| * x over {40,60,80}; the measured envelope "
        "is -cos(2x)/(2x), so this residual sits at |cos 2x| x / 2"
    )


def _check_q_asymptote_halved() -> Tuple[float, str]:
    worst = 0.0
    for x in (40.0, 60.0, 80.0):
        worst = max(
            worst, abs(q(EvalPoint(x)) * x + 0.5 * math.cos(2.0 * x)) * x
        )
    return worst, "max |q(x) x + cos(2x)/2| * x over {40,60,80}"


def _check_q_routes() -> Tuple[float, str]:
    worst = 0.0
    for x in (0.7, 2.0, 10.0):
        worst = max(
            worst, abs(q(EvalPoint(x)) - q_product_form(EvalPoint(x)))
        )
    return worst, "max |q - q_product_form| over {0.7,2,10}"


def _check_branch_continuity() -> Tuple[float, str]:
    worst = 0.0
    for x in np.linspace(0.4, 0.625, 10):
        xf = float(x)
        direct = p_direct(EvalPoint(xf))
        closed = -0.25 * (q_product_form(EvalPoint(xf)) + 1.0)
        worst = max(worst, abs(direct - closed))
    return worst, "max branch disagreement on [0.4, 0.625]"


def _check_mellin_identity() -> Tuple[float, str]:
    labels = set()
    worst = 0.0
    for x in (0.3, 1.0, 5.0):
        report = verify_mellin_identity(x)
        labels.add(report.matched)
        worst = max(worst, report.residual)
    if len(labels) != 1:
        return math.inf, f"inconsistent normalizations: {sorted(labels)}"
    return worst, f"normalization resolved as {labels.pop()!r}"


def _check_meijer_p_form() -> Tuple[float, str]:
    dev = abs(p_closed_meijer(EvalPoint(1.0)) - p_closed(EvalPoint(1.0)))
    return dev, "|p_closed_meijer(1) - p_closed(1)|"


def _check_greens_equivalence() -> Tuple[float, str]:
    worst = 0.0
    for mr in (0.25, 0.5, 1.0, 2.0, 4.0):
        params = GreenParams(r=mr, m=1.0)
        closed = greens_combination(params)
        quad = greens_combination_quadrature(params)
        worst = max(worst, abs(closed - quad) / abs(closed))
    return worst, "max relative closed-vs-quadrature deviation, mr in {0.25..4}"


def _check_greens_symmetry() -> Tuple[float, str]:
    reference = greens_combination(GreenParams(r=1.0, m=1.0))
    worst = 0.0
    for r, m in ((2.0, 0.5), (0.5, 2.0), (4.0, 0.25)):
        worst = max(
            worst, abs(greens_combination(GreenParams(r=r, m=m)) - reference)
        )
    return worst, "mr-only dependence at mr=1"


def _check_greens_decay() -> Tuple[float, str]:
    value = greens_combination(GreenParams(r=10.0, m=1.0))
    return abs(value), f"greens_combination(mr=10) = {value!r}"


def _check_radial_integral() -> Tuple[float, str]:
    worst = 0.0
    values = []
    for m in (0.5, 1.0, 2.0):
        value = float(radial_integral(m))
        values.append(value)
        worst = max(worst, abs(value * 6.0 * m * m + 1.0))
    return worst, (
        "max |radial_integral(m) 6 m^2 + 1| over {0.5,1,2}; "
        f"m=1 gives {values[1]!r}"
    )


def _check_wronskian() -> Tuple[float, str]:
    worst = 0.0
    jn = np.empty(7)
    for x in main_grid():
        xf = float(x)
        scale = 2.0 / (math.pi * xf)
        _k.j_array(xf, 6, jn)
        yn = [_k.yn_upward(n, xf) for n in range(7)]
        for n in range(5):
            residual = jn[n] * yn[n + 1] - jn[n + 1] * yn[n] + scale
            worst = max(worst, abs(residual) / scale)
    return worst, "max relative Wronskian residual, n <= 4, grid x"


def _check_sum_squares() -> Tuple[float, str]:
    # Completeness: J_0^2 + 2 sum_{k>=1} J_k^2 = 1, i.e. the plain sum
    # over nu >= 0 equals (1 + J_0^2)/2.
    worst = 0.0
    for x in main_grid():
        xf = float(x)
        plain = sum_squares_all(EvalPoint(xf))
        j0 = _k.jy01(xf)[0]
        worst = max(worst, abs(2.0 * plain - j0 * j0 - 1.0))
    return worst, "max |J_0^2 + 2 sum_{k>=1} J_k^2 - 1| on the grid"


def _check_jjhat_identity() -> Tuple[float, str]:
    worst = 0.0
    for x in (0.5, 2.0, 10.0, 30.0):
        point = EvalPoint(x)
        lhs = sum_jjhat(point)
        j0 = _k.jy01(x)[0]
        rhs = 0.5 * j0 * jhat(0, point) - 0.5 * integral_j0sq_over_t(x).value
        worst = max(worst, abs(lhs - rhs))
    return worst, "max |sum J_nu jhat_nu - (J_0 jhat_0 - tail)/2|"


def _check_lommel() -> Tuple[float, str]:
    worst = 0.0
    for nu in (1, 2, 3):
        for x in (0.8, 5.0, 17.0):
            series = lommel_tail(nu, EvalPoint(x))
            quad = integral_jnsq_over_t(nu, x).value
            worst = max(worst, abs(series - quad))
    return worst, "max series-vs-quadrature deviation, nu in {1,2,3}"


def _check_symbolic_base() -> Tuple[float, str]:
    bad = 0
    if compute_b(CoeffIndex(0, 0, 0)) != SymbolicPolynomial.unit():
        bad += 1
    for idx in ((-1, 0, 0), (0, -2, 4), (1, 1, -1)):
        if compute_b(CoeffIndex(*idx)):
            bad += 1
    return float(bad), "B[0,0,0] = 1 and negative indices vanish"


def _check_symbolic_parity() -> Tuple[float, str]:
    bad = 0
    for i in range(5):
        for j in range(5):
            for l in range(9):
                if (i + j + l) % 2 == 1 and compute_b(CoeffIndex(i, j, l)):
                    bad += 1
    return float(bad), "odd i+j+l coefficients vanish, i,j <= 4, l <= 8"


def _check_symbolic_reality() -> Tuple[float, str]:
    findings = reality_report(3, 3, 6)
    if findings:
        shown = ", ".join(
            f"B[{idx.i},{idx.j},{idx.l}]" for idx, _, _ in findings[:4]
        )
        return float(len(findings)), f"violations at {shown}"
    return 0.0, "conj(B[i,j,l]) = B[j,i,l] on i,j <= 3, l <= 6"


def _check_symbolic_support() -> Tuple[float, str]:
    bad = 0
    for l in range(9):
        for i in range(l + 3):
            for j in range(l + 3):
                if i + j > l and compute_b(CoeffIndex(i, j, l)):
                    bad += 1
    return float(bad), "i+j > l coefficients vanish up to l <= 8"


def _check_symbolic_grading() -> Tuple[float, str]:
    bad = 0
    for i in range(5):
        for j in range(5):
            for l in range(9):
                weights = monomial_weights(compute_b(CoeffIndex(i, j, l)))
                if weights not in ((), (l,)):
                    bad += 1
    return float(bad), "every nonzero B[i,j,l] is weight-l homogeneous"


def _check_symbolic_hand_values() -> Tuple[float, str]:
    f = DerivGenerator()
    f01 = DerivGenerator(0, 1)
    f10 = DerivGenerator(1, 0)
    f11 = DerivGenerator(1, 1)
    expected = [
        ((0, 0, 2), SymbolicPolynomial.generator(f)),
        ((1, 0, 1), SymbolicPolynomial.zero()),
        ((1, 0, 3), SymbolicPolynomial.generator(f01).scaled(2)),
        ((0, 1, 3), SymbolicPolynomial.generator(f10).scaled(2)),
        ((0, 0, 4), SymbolicPolynomial({(f11,): 4, (f, f): 1})),
    ]
    bad = sum(
        1 for idx, poly in expected if compute_b(CoeffIndex(*idx)) != poly
    )
    return float(bad), "hand-derived low-order coefficients match"


def _check_perturbative_reduction() -> Tuple[float, str]:
    params = GreenParams(r=1.0, m=1.0)
    closed = greens_combination(params)
    term = perturbative_diagonal_term(0, 0, params)
    return abs(term - closed) / abs(closed), "(i,l)=(0,0) reduces to the combination"


def _check_perturbative_mass_derivative() -> Tuple[float, str]:
    params = GreenParams(r=1.0, m=1.0)
    term = perturbative_diagonal_term(0, 2, params)
    # d/d(m^2) of the combination by central differences in m^2.
    h = 1e-3
    upper = greens_combination(GreenParams(r=1.0, m=math.sqrt(1.0 + h)))
    lower = greens_combination(GreenParams(r=1.0, m=math.sqrt(1.0 - h)))
    derivative = (upper - lower) / (2.0 * h)
    return abs(term + derivative), "(i,l)=(0,2) vs -d/d(m^2) of the l=0 case"


_REGISTRY: List[Tuple[str, float, Callable[[], Tuple[float, str]]]] = [
    ("main_theorem", 1e-8, _check_main_theorem),
    ("order_derivative_anchor", 1e-9, _check_order_derivative_anchor),
    ("p_limit", 2.0, _check_p_limit),
    ("q_anchor", 5e-3, _check_q_anchor),
    ("q_asymptote", 5.0, _check_q_asymptote),
    ("q_asymptote_halved", 5.0, _check_q_asymptote_halved),
    ("q_routes", 1e-9, _check_q_routes),
    ("branch_continuity", 1e-7, _check_branch_continuity),
    ("mellin_identity", 1e-8, _check_mellin_identity),
    ("meijer_p_form", 1e-8, _check_meijer_p_form),
    ("greens_equivalence", 1e-6, _check_greens_equivalence),
    ("greens_symmetry", 0.0, _check_greens_symmetry),
    ("greens_decay", 1e-6, _check_greens_decay),
    ("radial_integral", 1e-4, _check_radial_integral),
    ("wronskian", 1e-12, _check_wronskian),
    ("sum_squares", 1e-10, _check_sum_squares),
    ("jjhat_identity", 1e-8, _check_jjhat_identity),
    ("lommel", 1e-9, _check_lommel),
    ("symbolic_base", 0.0, _check_symbolic_base),
    ("symbolic_parity", 0.0, _check_symbolic_parity),
    ("symbolic_reality", 0.0, _check_symbolic_reality),
    ("symbolic_support", 0.0, _check_symbolic_support),
    ("symbolic_grading", 0.0, _check_symbolic_grading),
    ("symbolic_hand_values", 0.0, _check_symbolic_hand_values),
    ("perturbative_reduction", 1e-6, _check_perturbative_reduction),
    ("perturbative_mass_derivative", 1e-4, _check_perturbative_mass_derivative),
]


def check_names() -> List[str]:
    """Registry order; also the accepted tolerance-override keys."""
    return [name for name, _, _ in _REGISTRY]


def default_tolerances() -> Dict[str, float]:
    return {name: tol for name, tol, _ in _REGISTRY}


def run_checks(
    names: Optional[List[str]] = None,
    tolerances: Optional[Mapping[str, float]] = None,
) -> List[dict]:
    """Run the selected checks and report pass/fail with residuals.

    Parameters
    ----------
    names:
        Subset of `check_names()` to run, in registry order; all when
        omitted.
    tolerances:
        Per-check tolerance overrides.  Unknown keys are rejected.

    Returns
    -------
    list of dict
        One record per check: name, passed, residual, tolerance,
        details.
    """
    known = set(check_names())
    if names is not None:
        unknown = [name for name in names if name not in known]
        if unknown:
            raise DomainError(f"unknown check names: {unknown}")
        selected = set(names)
    else:
        selected = known
    overrides = dict(tolerances or {})
    bad_keys = [key for key in overrides if key not in known]
    if bad_keys:
        raise DomainError(f"unknown tolerance keys: {sorted(bad_keys)}")

    records: List[dict] = []
    for name, default_tol, fn in _REGISTRY:
        if name not in selected:
            continue
        tolerance = float(overrides.get(name, default_tol))
        residual, details = fn()
        records.append(
            {
                "name": name,
                "passed": bool(residual <= tolerance),
                "residual": float(residual),
                "tolerance": tolerance,
                "details": details,
            }
        )
    return records
