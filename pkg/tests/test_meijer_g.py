"""Mellin-Barnes evaluation of the two G^{m,0}_{1,3} closed-form blocks."""

import math

import mpmath as mp
import pytest

from besselsum import (
    AmbiguousNormalizationError,
    BudgetError,
    ContourConfig,
    DomainError,
    MeijerGSpec,
    MisplacedContourError,
    NormalizationReport,
    meijer_g20,
    meijer_g30,
    mellin_barnes_eval,
    verify_mellin_identity,
)
from besselsum.meijer_g import G20_SPEC, G30_SPEC

mp.mp.dps = 30

Z_GRID = [0.04, 0.3, 1.0, 4.0, 25.0, 100.0]


def _mp_g20(z: float) -> float:
    return float(mp.meijerg([[], [1]], [[-0.5, -0.5], [-0.5]], z))


def _mp_g30(z: float) -> float:
    return float(mp.meijerg([[], [1]], [[-0.5, -0.5, -0.5], []], z))


@pytest.mark.parametrize("z", Z_GRID)
def test_g20_against_reference(z):
    assert meijer_g20(z) == pytest.approx(_mp_g20(z), abs=1e-10, rel=1e-9)


@pytest.mark.parametrize("z", Z_GRID)
def test_g30_against_reference(z):
    assert meijer_g30(z) == pytest.approx(_mp_g30(z), abs=1e-10, rel=1e-9)


def test_values_are_real_floats():
    for z in (0.5, 7.0):
        assert isinstance(meijer_g20(z), float)
        assert isinstance(meijer_g30(z), float)


class TestContourInvariance:
    # The integrand is analytic between the contour and the pole ladder,
    # so shifting the line or doubling the sampling cannot move the value.

    @pytest.mark.parametrize("real_part", [-0.85, -0.65])
    def test_shifted_line(self, real_part):
        base = meijer_g20(2.0)
        moved = meijer_g20(2.0, ContourConfig(real_part=real_part))
        assert moved == pytest.approx(base, abs=1e-10)

    def test_density_doubling(self):
        for fn in (meijer_g20, meijer_g30):
            base = fn(2.0)
            dense = fn(2.0, ContourConfig(node_density=80.0))
            assert dense == pytest.approx(base, abs=1e-11)

    def test_cutoff_extension(self):
        base = meijer_g20(2.0)
        longer = meijer_g20(2.0, ContourConfig(im_cutoff=400.0))
        assert longer == pytest.approx(base, abs=1e-11)


class TestRefusals:
    def test_contour_through_poles(self):
        with pytest.raises(MisplacedContourError):
            meijer_g20(1.0, ContourConfig(real_part=-0.25))
        with pytest.raises(MisplacedContourError):
            meijer_g20(1.0, ContourConfig(real_part=-0.5))

    def test_contour_grazing_pole(self):
        # left of the ladder but within one node spacing of it
        with pytest.raises(MisplacedContourError):
            meijer_g20(1.0, ContourConfig(real_part=-0.51, node_density=40.0))

    def test_short_contour_budget(self):
        # algebraic (|Im s|^-2) decay of the g20 integrand leaves too much
        # mass beyond |Im s| = 12 for the 1e-8 truncation budget
        with pytest.raises(BudgetError):
            meijer_g20(1.0, ContourConfig(im_cutoff=12.0))

    def test_unsupported_spec(self):
        with pytest.raises(DomainError):
            MeijerGSpec(2, 0, 1, 3, (1.0,), (-0.5, -0.5, 0.5)).kind
        with pytest.raises(DomainError):
            mellin_barnes_eval(
                MeijerGSpec(1, 0, 1, 3, (1.0,), (-0.5, -0.5, -0.5)), 1.0)

    def test_bad_argument(self):
        with pytest.raises(DomainError):
            meijer_g20(0.0)
        with pytest.raises(DomainError):
            meijer_g30(-3.0)
        with pytest.raises(DomainError):
            meijer_g20(math.inf)

    def test_config_validation(self):
        with pytest.raises(DomainError):
            ContourConfig(im_cutoff=5.0)
        with pytest.raises(DomainError):
            ContourConfig(node_density=4.0)
        with pytest.raises(DomainError):
            ContourConfig(real_part=math.nan)

    def test_spec_shape_validation(self):
        with pytest.raises(DomainError):
            MeijerGSpec(2, 0, 1, 3, (1.0, 2.0), (-0.5, -0.5, -0.5))
        with pytest.raises(DomainError):
            MeijerGSpec(4, 0, 1, 3, (1.0,), (-0.5, -0.5, -0.5))


class TestNormalizationFinding:
    def test_consistent_selection(self):
        reports = [verify_mellin_identity(x) for x in (0.3, 1.0, 5.0)]
        assert all(isinstance(r, NormalizationReport) for r in reports)
        matched = {r.matched for r in reports}
        assert matched == {"-G/(2 sqrt(pi))"}
        for r in reports:
            assert r.residual <= 1e-8
            # the rejected candidate must be clearly separated
            assert r.residual_bare > 1e-3 * abs(r.g_value)

    def test_report_fields_tie_out(self):
        r = verify_mellin_identity(1.0)
        two_sqrt_pi = 2.0 * math.sqrt(math.pi)
        assert r.residual_prefactored == pytest.approx(
            abs(r.integral_value + r.g_value / two_sqrt_pi), abs=1e-15)
        assert r.residual == r.residual_prefactored

    def test_domain_window(self):
        with pytest.raises(DomainError):
            verify_mellin_identity(0.1)
        with pytest.raises(DomainError):
            verify_mellin_identity(25.0)


def test_spec_singletons_expose_kind():
    assert G20_SPEC.kind == 2
    assert G30_SPEC.kind == 3
