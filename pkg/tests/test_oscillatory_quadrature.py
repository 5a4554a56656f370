"""Semi-infinite oscillatory integrals with certified error estimates.

Frozen reference values were computed with mpmath (chunked quadrature to
t ~ 1e4 plus the analytic Hankel mean tail, 40 digit working precision),
independent of the panel/IBP machinery under test.
"""

import math
import warnings

import mpmath as mp
import pytest

from besselsum import (
    BudgetError,
    ConditionalConvergenceWarning,
    DomainError,
    Estimate,
    EvalPoint,
    NonConvergenceError,
    QuadraturePlan,
    integral_j0sq_over_t,
    integral_j0y0_tail,
    integral_jnsq_over_t,
    lambda_kernel_integral,
)

mp.mp.dps = 25

# int_x^inf J_0 Y_0 / t^2 dt
J0Y0_TAIL_REF = {
    0.5: -0.11936829684660488965,
    5.0: -0.00029704247927406621977,
    45.0: 1.5889613338344407675e-6,
}

# int_x^inf J_n(t)^2 / t dt
JNSQ_REF = {
    (0, 3.3): 0.10951170360171900998,
    (1, 0.8): 0.42612336919617481319,
    (2, 7.0): 0.045235941707854577999,
    (3, 17.0): 0.019382201316000446646,
    (5, 7.0): 0.049877821922519954135,
}


class TestJ0Y0Tail:
    @pytest.mark.parametrize("x,want", sorted(J0Y0_TAIL_REF.items()))
    def test_frozen_values(self, x, want):
        est = integral_j0y0_tail(EvalPoint(x))
        assert est.value == pytest.approx(want, abs=1e-11)
        # the reported bar must cover the actual error and meet the budget
        assert abs(est.value - want) <= est.error_estimate + 1e-13
        assert est.error_estimate <= QuadraturePlan().error_budget

    def test_refinement_invariance(self):
        base = integral_j0y0_tail(EvalPoint(2.0))
        for plan in (
            QuadraturePlan(subdivide=2),
            QuadraturePlan(panel_rule=48),
            QuadraturePlan(split_point=180.0),
            QuadraturePlan(zero_splitting=False),
        ):
            alt = integral_j0y0_tail(EvalPoint(2.0), plan)
            assert abs(alt.value - base.value) <= (
                base.error_estimate + alt.error_estimate + 1e-14
            )

    def test_shallow_tail_refused(self):
        # one IBP term leaves a remainder near T^-4 ~ 5e-9, far over the
        # default budget; the routine must refuse, not round down
        with pytest.raises(BudgetError) as exc:
            integral_j0y0_tail(EvalPoint(1.0), QuadraturePlan(tail_order=1))
        assert exc.value.achieved > exc.value.budget

    def test_impossible_budget_refused(self):
        with pytest.raises(BudgetError):
            integral_j0y0_tail(EvalPoint(1.0), QuadraturePlan(error_budget=1e-16))

    def test_far_magnitude(self):
        # leading tail form -(1/pi) sin(2x)/(2x^3) puts |I(40)| under 1e-4
        assert abs(integral_j0y0_tail(EvalPoint(40.0)).value) <= 1e-4

    def test_domain(self):
        with pytest.raises(DomainError):
            integral_j0y0_tail(EvalPoint(0.0))


class TestJnSquaredOverT:
    @pytest.mark.parametrize("n,x,want",
                             [(n, x, v) for (n, x), v in sorted(JNSQ_REF.items())])
    def test_frozen_values(self, n, x, want):
        est = integral_jnsq_over_t(n, EvalPoint(x))
        assert est.value == pytest.approx(want, abs=1e-10)
        assert abs(est.value - want) <= est.error_estimate + 1e-12

    def test_zero_alias(self):
        a = integral_j0sq_over_t(EvalPoint(3.3))
        b = integral_jnsq_over_t(0, EvalPoint(3.3))
        assert a == b

    def test_refinement_invariance(self):
        base = integral_jnsq_over_t(2, EvalPoint(1.5))
        alt = integral_jnsq_over_t(2, EvalPoint(1.5), QuadraturePlan(subdivide=3))
        assert abs(alt.value - base.value) <= (
            base.error_estimate + alt.error_estimate + 1e-14
        )

    def test_order_range(self):
        with pytest.raises(DomainError):
            integral_jnsq_over_t(7, EvalPoint(1.0))
        with pytest.raises(DomainError):
            integral_jnsq_over_t(-1, EvalPoint(1.0))

    def test_far_mean_value_scaling(self):
        # J_0^2 ~ 1/(pi t) on average, so the integral ~ 1/(pi x)
        x = 200.0
        value = integral_j0sq_over_t(EvalPoint(x)).value
        assert 0.8 <= value * math.pi * x <= 1.2

    @pytest.mark.parametrize("x", [1.0, 5.0])
    def test_derivative_consistency(self, x):
        # d/dx int_x^inf J_0^2/t dt = -J_0(x)^2 / x
        h = 1e-4
        fd = (integral_j0sq_over_t(EvalPoint(x + h)).value
              - integral_j0sq_over_t(EvalPoint(x - h)).value) / (2.0 * h)
        want = -float(mp.besselj(0, x)) ** 2 / x
        assert fd == pytest.approx(want, abs=1e-7)


class TestLambdaKernelIntegral:
    def test_grid_matched_oscillation(self):
        # kernel cos(2u) rides the half-period grid exactly; oracle from
        # mpmath quadosc on the purely oscillatory integrand
        for r, m in [(1.3, 0.7), (0.6, 1.1), (2.0, 0.25)]:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                est = lambda_kernel_integral(r, m, lambda u: math.cos(2.0 * u), 1.0)
            want = float(mp.quadosc(
                lambda t: t * mp.cos(2 * r * t) / (t * t + m * m),
                [0, mp.inf], period=float(mp.pi) / r,
            ))
            assert est.value == pytest.approx(want, abs=1e-12)
            assert abs(est.value - want) <= est.error_estimate + 1e-14

    def test_conditional_convergence_warns(self):
        with pytest.warns(ConditionalConvergenceWarning):
            lambda_kernel_integral(1.3, 0.7, lambda u: math.cos(2.0 * u), 1.0)

    def test_decaying_kernel_does_not_warn(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            est = lambda_kernel_integral(
                1.0, 1.0, lambda u: math.cos(2.0 * u) / (1.0 + u * u), 1.0)
        assert math.isfinite(est.value)

    def test_monotone_tail_bounded_honestly(self):
        # constant kernel, power 2: exact value 1/(2 m^2); the tail does
        # not alternate so no averaging credit may be taken
        plan = QuadraturePlan(error_budget=1e-3)
        for r, m in [(1.0, 0.5), (3.0, 2.0)]:
            est = lambda_kernel_integral(r, m, lambda u: 1.0, 2.0, plan=plan)
            want = 1.0 / (2.0 * m * m)
            assert abs(est.value - want) <= est.error_estimate

    def test_monotone_tail_refused_at_default_budget(self):
        with pytest.raises(BudgetError):
            lambda_kernel_integral(1.0, 0.5, lambda u: 1.0, 2.0)

    def test_divergent_integral_refused(self):
        # constant kernel with power 1: lambda/(lambda^2+m^2) is not
        # integrable and the tail gives no alternation to sum against
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            with pytest.raises(NonConvergenceError):
                lambda_kernel_integral(
                    1.0, 0.5, lambda u: 1.0, 1.0,
                    plan=QuadraturePlan(error_budget=1.0))

    def test_zero_kernel_shortcut(self):
        assert lambda_kernel_integral(1.0, 1.0, lambda u: 0.0, 1.0) == Estimate(0.0, 0.0)

    def test_batch_kernel_error_propagation(self):
        import numpy as np

        class Noisy:
            def __call__(self, u):
                return math.cos(2.0 * u)

            def batch(self, us):
                us = np.asarray(us)
                return np.cos(2.0 * us), np.full(us.shape, 1e-13)

        plain = lambda_kernel_integral(1.3, 0.7, lambda u: math.cos(2.0 * u), 2.0)
        noisy = lambda_kernel_integral(1.3, 0.7, Noisy(), 2.0)
        assert noisy.value == pytest.approx(plain.value, abs=1e-14)
        assert noisy.error_estimate > plain.error_estimate

    def test_domain(self):
        with pytest.raises(DomainError):
            lambda_kernel_integral(0.0, 1.0, lambda u: 1.0, 1.0)
        with pytest.raises(DomainError):
            lambda_kernel_integral(1.0, -1.0, lambda u: 1.0, 1.0)
        with pytest.raises(DomainError):
            lambda_kernel_integral(1.0, 1.0, lambda u: 1.0, 0.0)
        with pytest.raises(DomainError):
            lambda_kernel_integral(1.0, 1.0, lambda u: 1.0, 1.0,
                                   numerator_power=-1)


class TestPlanValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"split_point": 10.0},
            {"panel_rule": 2},
            {"panel_rule": 100},
            {"tail_order": 0},
            {"tail_order": 5},
            {"error_budget": 0.0},
            {"subdivide": 0},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(DomainError):
            QuadraturePlan(**kwargs)
