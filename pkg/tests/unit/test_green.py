"""Tests for the Green function series, the Robin function and their gradients."""

import math

import numpy as np
import pytest

from annulusgreen.core import auto_truncation, boundary_truncation, fixed_truncation
from annulusgreen.errors import DomainError, SingularityError
from annulusgreen.green import (
    boundary_expansion,
    coefficients,
    fourier_modes,
    grad_green_x,
    grad_robin,
    green,
    half_robin_slope,
    regular_part,
    robin,
    robin_critical_radius,
)
from annulusgreen.types import Annulus, PolarPoint, SeriesControl


def _direct_coefficients(ann: Annulus, r: float, m: int) -> tuple[float, float]:
    a, b = ann.a, ann.b
    big_a = (r**m - (a * a / r) ** m) / (b ** (2 * m) - a ** (2 * m))
    big_b = a ** (2 * m) * (r ** (-m) * b ** (2 * m) - r**m) / (b ** (2 * m) - a ** (2 * m))
    return big_a, big_b


class TestCoefficients:
    def test_zeroth_mode_at_outer_radius(self, ann):
        c = coefficients(ann, PolarPoint(2.0), 0)
        assert c.B == pytest.approx(0.0, abs=1e-15)
        assert c.A == pytest.approx(math.log(2.0), abs=1e-15)

    def test_zeroth_mode_at_inner_radius(self, ann):
        c = coefficients(ann, PolarPoint(1.0), 0)
        assert c.B == pytest.approx(1.0, abs=1e-15)
        assert c.A == pytest.approx(0.0, abs=1e-15)

    def test_growing_coefficient_vanishes_on_inner_circle(self, ann):
        assert coefficients(ann, PolarPoint(1.0), 3).A == 0.0

    @pytest.mark.parametrize("m", [1, 2, 5, 9])
    def test_ratio_form_matches_direct_formula(self, ann, m):
        c = coefficients(ann, PolarPoint(1.4), m)
        big_a, big_b = _direct_coefficients(ann, 1.4, m)
        assert c.A == pytest.approx(big_a, rel=1e-12)
        assert c.B == pytest.approx(big_b, rel=1e-12)

    @pytest.mark.parametrize("r", [1.05, 1.5, 1.95])
    def test_coefficients_positive_inside(self, ann, r):
        for m in range(1, 20):
            c = coefficients(ann, PolarPoint(r), m)
            assert c.A > 0.0
            assert c.B > 0.0

    def test_negative_mode_rejected(self, ann):
        with pytest.raises(DomainError):
            coefficients(ann, PolarPoint(1.5), -1)

    def test_pole_outside_rejected(self, ann):
        with pytest.raises(DomainError):
            coefficients(ann, PolarPoint(2.5), 1)


class TestGreen:
    def test_symmetric(self, ann):
        x, y = PolarPoint(1.2, 0.3), PolarPoint(1.7, 2.5)
        ctrl = auto_truncation(ann, [x.r, y.r], 1e-12)
        assert green(ann, x, y, ctrl) == pytest.approx(green(ann, y, x, ctrl), abs=1e-12)

    def test_positive_inside(self, ann):
        rng = np.random.default_rng(11)
        for _ in range(50):
            x = PolarPoint(float(rng.uniform(1.05, 1.95)), float(rng.uniform(0, 2 * math.pi)))
            y = PolarPoint(float(rng.uniform(1.05, 1.95)), float(rng.uniform(0, 2 * math.pi)))
            assert green(ann, x, y) > 0.0

    def test_vanishes_on_outer_circle(self, ann):
        y = PolarPoint(1.5, 0.0)
        ctrl = boundary_truncation(ann, y.r, 1e-12)
        for theta in (0.0, 1.0, math.pi):
            x = PolarPoint(2.0, theta)
            dist = math.dist((2.0 * math.cos(theta), 2.0 * math.sin(theta)), (1.5, 0.0))
            assert regular_part(ann, x, y, ctrl) - math.log(dist) == pytest.approx(0.0, abs=1e-10)

    def test_vanishes_on_inner_circle(self, ann):
        y = PolarPoint(1.5, 0.7)
        ctrl = boundary_truncation(ann, y.r, 1e-12)
        x = PolarPoint(1.0, 2.0)
        dist = math.dist(
            (math.cos(2.0), math.sin(2.0)), (1.5 * math.cos(0.7), 1.5 * math.sin(0.7))
        )
        assert regular_part(ann, x, y, ctrl) - math.log(dist) == pytest.approx(0.0, abs=1e-10)

    def test_singular_at_pole(self, ann):
        y = PolarPoint(1.5, 0.2)
        with pytest.raises(SingularityError):
            green(ann, y, y)

    def test_boundary_rejected(self, ann):
        with pytest.raises(DomainError):
            green(ann, PolarPoint(2.0), PolarPoint(1.5))

    def test_regular_part_on_diagonal_is_minus_robin(self, ann):
        y = PolarPoint(1.5, 0.0)
        ctrl = auto_truncation(ann, [y.r], 1e-12)
        assert regular_part(ann, y, y, ctrl) == pytest.approx(-robin(ann, y, ctrl), abs=1e-12)

    def test_both_on_boundary_rejected(self, ann):
        with pytest.raises(DomainError):
            regular_part(ann, PolarPoint(2.0), PolarPoint(1.0))

    def test_single_mode_truncation(self, ann):
        x, y = PolarPoint(1.3), PolarPoint(1.6, 1.0)
        zero, one = coefficients(ann, y, 0), coefficients(ann, y, 1)
        expected = (
            zero.A
            + zero.B * math.log(x.r)
            - (one.A * x.r + one.B / x.r) * math.cos(x.theta - y.theta)
        )
        assert regular_part(ann, x, y, SeriesControl(tol=1e-10, m_used=1)) == pytest.approx(
            expected, abs=1e-14
        )

    def test_cartesian_modes_match_ratio_form(self, ann):
        x, y = PolarPoint(1.3, 0.4), PolarPoint(1.6, 2.2)
        ctrl = auto_truncation(ann, [x.r, y.r], 1e-12)
        parts = []
        for m in range(ctrl.m_used + 1):
            am, bm, cm, dm = fourier_modes(ann, y, m)
            if m == 0:
                parts.append(am + bm * math.log(x.r))
            else:
                parts.append((am * x.r**m + bm * x.r ** (-m)) * math.cos(m * x.theta))
                parts.append((cm * x.r**m + dm * x.r ** (-m)) * math.sin(m * x.theta))
        assert math.fsum(parts) == pytest.approx(regular_part(ann, x, y, ctrl), abs=1e-10)

    def test_boundary_expansion_matches_log(self, ann):
        y = PolarPoint(1.5, 0.3)
        for radius in (1.0, 2.0):
            x = (radius * math.cos(1.1), radius * math.sin(1.1))
            exact = math.log(math.dist(x, (1.5 * math.cos(0.3), 1.5 * math.sin(0.3))))
            assert boundary_expansion(ann, y, radius, 1.1, 120) == pytest.approx(exact, abs=1e-12)

    def test_boundary_expansion_needs_boundary_radius(self, ann):
        with pytest.raises(DomainError):
            boundary_expansion(ann, PolarPoint(1.5), 1.7, 0.0, 10)


class TestRobin:
    def test_depends_on_radius_only(self, ann):
        assert robin(ann, PolarPoint(1.3, 0.0)) == robin(ann, PolarPoint(1.3, 2.0))

    def test_agrees_with_oversummed_series(self, ann):
        y = PolarPoint(math.sqrt(2.0))
        auto = robin(ann, y, auto_truncation(ann, [y.r], 1e-13))
        oversummed = robin(ann, y, fixed_truncation(2000, m_max=2000))
        assert auto == pytest.approx(oversummed, abs=1e-12)

    def test_grows_toward_boundary(self, ann):
        assert robin(ann, PolarPoint(1.01)) > robin(ann, PolarPoint(1.2))
        assert robin(ann, PolarPoint(1.99)) > robin(ann, PolarPoint(1.8))

    def test_boundary_rejected(self, ann):
        with pytest.raises(DomainError):
            robin(ann, PolarPoint(1.0))

    def test_scale_covariance(self):
        # R_{sA}(s y) = R_A(y) − log s
        base = robin(Annulus(1.0, 2.0), PolarPoint(1.4))
        scaled = robin(Annulus(3.0, 6.0), PolarPoint(4.2))
        assert scaled == pytest.approx(base - math.log(3.0), abs=1e-10)


class TestGradients:
    def test_same_ray_has_no_tangential_part(self, ann):
        g = grad_green_x(ann, PolarPoint(1.3, 0.0), PolarPoint(1.7, 0.0))
        assert g.tangential_part == 0.0

    def test_grad_green_matches_central_difference(self, ann):
        x, y = PolarPoint(1.3, 0.5), PolarPoint(1.7, 2.0)
        h = 1e-5
        ctrl = auto_truncation(ann, [x.r - 2 * h, x.r + 2 * h, y.r], 1e-13, order=1)
        g = grad_green_x(ann, x, y, ctrl)
        px, py = x.r * math.cos(x.theta), x.r * math.sin(x.theta)

        def value(u: float, v: float) -> float:
            return green(ann, PolarPoint(math.hypot(u, v), math.atan2(v, u)), y, ctrl)

        d1 = (value(px + h, py) - value(px - h, py)) / (2 * h)
        d2 = (value(px, py + h) - value(px, py - h)) / (2 * h)
        assert g.vector.x1 == pytest.approx(d1, abs=1e-7)
        assert g.vector.x2 == pytest.approx(d2, abs=1e-7)

    def test_grad_robin_is_radial(self, ann):
        g = grad_robin(ann, PolarPoint(1.5, 0.7))
        assert g.tangential_part == 0.0
        assert g.radial_part == pytest.approx(2.0 * half_robin_slope(ann, 1.5))

    def test_grad_robin_matches_central_difference(self, ann):
        h = 1e-5
        ctrl = auto_truncation(ann, [1.4 - 2 * h, 1.4 + 2 * h], 1e-13, order=1)
        central = (robin(ann, PolarPoint(1.4 + h), ctrl) - robin(ann, PolarPoint(1.4 - h), ctrl))
        assert grad_robin(ann, PolarPoint(1.4), ctrl).radial_part == pytest.approx(
            central / (2 * h), abs=1e-7
        )

    def test_tail_bound_covers_small_annulus_gradient(self):
        small = Annulus(0.001, 0.002)
        y = PolarPoint(0.0019, 0.0)
        ctrl = auto_truncation(small, [y.r], 1e-10, order=1)
        reference = grad_robin(small, y, fixed_truncation(4000, m_max=4000))
        gap = abs(grad_robin(small, y, ctrl).radial_part - reference.radial_part)
        assert gap <= ctrl.tail_bound
        assert ctrl.tail_bound < 1e-10

    def test_tail_bound_covers_small_annulus_green_gradient(self):
        small = Annulus(0.001, 0.002)
        x, y = PolarPoint(0.0012, 0.3), PolarPoint(0.0018, 2.0)
        ctrl = auto_truncation(small, [x.r, y.r], 1e-10, order=1)
        approx = grad_green_x(small, x, y, ctrl)
        reference = grad_green_x(small, x, y, fixed_truncation(4000, m_max=4000))
        assert abs(approx.radial_part - reference.radial_part) <= ctrl.tail_bound
        assert abs(approx.tangential_part - reference.tangential_part) <= ctrl.tail_bound

    def test_robin_critical_radius(self, ann):
        r_star = robin_critical_radius(ann)
        assert 1.0 < r_star < 2.0
        assert grad_robin(ann, PolarPoint(r_star, 0.4)).norm < 1e-10
