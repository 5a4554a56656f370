"""Bessel order-derivative sums and massive 2-d Green's-function kernels.

A from-scratch double-precision special-functions core (Bessel J/Y/I/K,
log-gamma, digamma) feeds four verification surfaces:

* the closed form of P(x) = sum_n n J_n(x) dJ_n/dnu and its regularized
  kernel Q(x) = -4 P(x) - 1;
* Mellin-Barnes evaluation of the two Meijer G functions that appear in
  the closed forms, with the tail-integral normalization resolved
  numerically;
* the Green's-function combination for a massive field in two
  dimensions, in closed form and as a lambda-quadrature, together with
  its radial integral;
* the exact symbolic recurrence for the perturbed-resolvent
  coefficients B[i,j,l].

Hot kernels run from a compiled extension when one is importable and
from identical plain-Python source otherwise; `BACKEND` reports which
is active and the ``BESSELSUM_BACKEND`` environment variable overrides
the choice.
"""

from .backend import BACKEND, load_pure_kernels
from .bessel_core import (
    EvalPoint,
    Order,
    RegimeConfig,
    bessel_j,
    bessel_k0,
    bessel_k1,
    bessel_y,
)
from .entropy_kernels import (
    DEFAULT_SWITCH,
    GreenParams,
    KernelSwitch,
    QKernel,
    greens_combination,
    greens_combination_quadrature,
    p_closed,
    p_closed_meijer,
    perturbative_diagonal_term,
    q,
    q_asymptotic,
    q_product_form,
    radial_integral,
)
from .errors import (
    AmbiguousNormalizationError,
    BesselSumError,
    BudgetError,
    ConditionalConvergenceWarning,
    DomainError,
    MisplacedContourError,
    NonConvergenceError,
    PrecisionLossError,
    TruncationWarning,
)
from .meijer_g import (
    DEFAULT_CONTOUR,
    G20_SPEC,
    G30_SPEC,
    ContourConfig,
    MeijerGSpec,
    NormalizationReport,
    meijer_g20,
    meijer_g30,
    mellin_barnes_eval,
    verify_mellin_identity,
)
from .order_derivatives import (
    NuDerivativeConfig,
    jhat,
    jhat_closed_integer,
)
from .oscillatory_quadrature import (
    Estimate,
    QuadraturePlan,
    integral_j0sq_over_t,
    integral_j0y0_tail,
    integral_jnsq_over_t,
    lambda_kernel_integral,
)
from .resolvent_coeffs import (
    OMEGA,
    OMEGA_BAR,
    CoeffIndex,
    DerivGenerator,
    SymbolicPolynomial,
    compute_b,
    conjugate,
    derive,
    format_coefficient,
    json_terms,
    monomial_weights,
    nonzero_coefficients,
    polynomial_text,
    reality_report,
)
from .series_sums import (
    DEFAULT_TRUNCATION,
    SeriesTruncation,
    lommel_tail,
    p_direct,
    sum_jjhat,
    sum_squares_all,
)
from .verify import check_names, default_tolerances, run_checks

__version__ = "0.1.0"
