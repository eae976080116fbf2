"""Epigraph membership, affine frames, and the analytic reference bodies.

Closed-form constants (volumes, centroid values, cut survival fractions)
are cross-checked against direct numerical quadrature so the reference
bodies can serve as ground truth for the sampler tests.
"""

import numpy as np
import pytest
from scipy import integrate

from epiwalk.geometry import (AffineMap, EpigraphBody, analytic_centroid_and_cut,
                              boxN, exact_membership, parabola2d,
                              reference_body, triangle2d, vertical_gap)


class TestEpigraphBody:
    @pytest.fixture
    def body(self):
        return EpigraphBody(lambda x: float(abs(x[0])), dim=1, ceiling=0.5)

    @pytest.mark.parametrize("p,inside", [
        ([0.0, 0.25], True),      # strictly interior
        ([0.2, 0.2], True),       # on the graph
        ([0.2, 0.5], True),       # on the ceiling
        ([0.5, 0.5], True),       # corner
        ([0.2, 0.1], False),      # below the graph
        ([0.0, 0.51], False),     # above the ceiling
        ([0.51, 0.52], False),    # outside the cube
        ([0.0, -0.1], False),     # below the graph at the apex
    ])
    def test_membership_examples(self, body, p, inside):
        assert exact_membership(np.array(p), body) is inside

    def test_tolerance_admits_boundary_noise(self, body):
        p = np.array([0.0, 0.5 + 1e-12])
        assert not body.contains(p)
        assert body.contains(p, tol=1e-9)

    def test_vertical_gap_signs(self, body):
        f = lambda x: float(abs(x[0]))
        assert vertical_gap(np.array([0.1, 0.4]), f) == pytest.approx(0.3)
        assert vertical_gap(np.array([0.1, 0.1]), f) == pytest.approx(0.0)
        assert vertical_gap(np.array([0.1, 0.05]), f) == pytest.approx(-0.05)

    def test_with_ceiling_shrinks_body(self, body):
        lower = body.with_ceiling(0.3)
        p = np.array([0.0, 0.4])
        assert body.contains(p) and not lower.contains(p)

    def test_wrong_length_rejected(self, body):
        with pytest.raises(ValueError):
            body.contains(np.array([0.1, 0.1, 0.1]))


class TestAffineMap:
    def test_scaling_with_offset_example(self):
        map_ = AffineMap(2.0 * np.eye(2), np.array([1.0, 0.0]))
        out = map_.apply(np.array([0.5, 0.5]))
        assert np.allclose(out, [2.0, 1.0])

    def test_unapply_inverts_example(self):
        map_ = AffineMap(2.0 * np.eye(2), np.array([1.0, 0.0]))
        assert np.allclose(map_.unapply(np.array([2.0, 1.0])), [0.5, 0.5])

    def test_round_trip_random_maps(self):
        rng = np.random.default_rng(0)
        worst = 0.0
        for _ in range(1000):
            d = int(rng.integers(1, 6))
            A = rng.normal(size=(d, d)) + 3.0 * np.eye(d)
            map_ = AffineMap(A, rng.normal(size=d))
            p = rng.normal(size=d)
            worst = max(worst, float(np.max(np.abs(map_.unapply(map_.apply(p)) - p))))
        assert worst < 1e-8

    def test_apply_batches_rows(self):
        map_ = AffineMap(2.0 * np.eye(2), np.array([1.0, 0.0]))
        pts = np.array([[0.5, 0.5], [0.0, 0.0]])
        assert np.allclose(map_.apply(pts), [[2.0, 1.0], [1.0, 0.0]])

    def test_compose_after_matches_sequential(self):
        rng = np.random.default_rng(5)
        first = AffineMap(rng.normal(size=(3, 3)) + 2 * np.eye(3),
                          rng.normal(size=3))
        second = AffineMap(rng.normal(size=(3, 3)) + 2 * np.eye(3),
                           rng.normal(size=3))
        p = rng.normal(size=3)
        combined = second.compose_after(first)
        assert np.allclose(combined.apply(p), second.apply(first.apply(p)))

    def test_singular_map_rejected(self):
        with pytest.raises(ValueError):
            AffineMap(np.zeros((2, 2)), np.zeros(2))

    def test_nonfinite_map_rejected(self):
        A = np.eye(2)
        A[0, 0] = np.inf
        with pytest.raises(ValueError):
            AffineMap(A, np.zeros(2))

    def test_whitening_form(self):
        W = np.diag([2.0, 4.0])
        mean = np.array([1.0, -1.0])
        map_ = AffineMap.whitening(W, mean)
        assert np.allclose(map_.apply(mean), [0.0, 0.0])
        assert np.allclose(map_.apply(np.array([1.5, -1.0])), [1.0, 0.0])


def _area_by_quadrature(width, ceiling):
    """Area of {(x, y): f(x) <= y <= C} from the width function w(y)."""
    value, _ = integrate.quad(width, 0.0, ceiling)
    return value


def _centroid_by_quadrature(width, ceiling):
    area = _area_by_quadrature(width, ceiling)
    moment, _ = integrate.quad(lambda y: y * width(y), 0.0, ceiling)
    return moment / area


class TestReferenceBodies:
    def test_triangle_constants_match_quadrature(self):
        shape = triangle2d()
        width = lambda y: 2.0 * y          # |x| <= y
        area = _area_by_quadrature(width, 0.5)
        centroid = _centroid_by_quadrature(width, 0.5)
        below, _ = integrate.quad(width, 0.0, centroid)
        assert shape.volume == pytest.approx(area, abs=1e-12)
        assert shape.centroid_value == pytest.approx(centroid, abs=1e-12)
        assert shape.below_centroid_fraction == pytest.approx(below / area,
                                                              abs=1e-12)

    def test_parabola_constants_match_quadrature(self):
        shape = parabola2d()
        width = lambda y: 2.0 * np.sqrt(y)  # x^2 <= y
        area = _area_by_quadrature(width, 0.25)
        centroid = _centroid_by_quadrature(width, 0.25)
        below, _ = integrate.quad(width, 0.0, centroid)
        # The sqrt integrand limits quadrature accuracy near zero.
        assert shape.volume == pytest.approx(area, abs=1e-8)
        assert shape.centroid_value == pytest.approx(centroid, abs=1e-8)
        assert shape.below_centroid_fraction == pytest.approx(below / area,
                                                              abs=1e-8)

    @pytest.mark.parametrize("name,centroid,fraction", [
        ("triangle2d", 1.0 / 3.0, 4.0 / 9.0),
        ("parabola2d", 0.15, 0.6 ** 1.5),
        ("square", 0.5, 0.5),
    ])
    def test_frozen_constants(self, name, centroid, fraction):
        shape = reference_body(name)
        got_centroid, got_fraction = analytic_centroid_and_cut(shape)
        assert got_centroid == pytest.approx(centroid, abs=1e-12)
        assert got_fraction == pytest.approx(fraction, abs=1e-12)

    @pytest.mark.parametrize("name", ["triangle2d", "parabola2d", "square"])
    def test_direct_sampler_statistics(self, name):
        # Direct samplers (no walk) must reproduce the closed-form centroid
        # value and sub-centroid mass; 10^5 points put the CLT noise well
        # inside the asserted bands.
        shape = reference_body(name)
        pts = shape.sample(np.random.default_rng(2), 10**5)
        assert all(shape.body.contains(p, tol=1e-12) for p in pts)
        assert pts[:, -1].mean() == pytest.approx(shape.centroid_value,
                                                  abs=0.005)
        below = np.mean(pts[:, -1] < shape.centroid_value)
        assert below == pytest.approx(shape.below_centroid_fraction, abs=0.01)

    def test_box_volume_formula(self):
        shape = boxN(3, halfwidth=0.5, floor=0.0, ceiling=1.0)
        assert shape.volume == pytest.approx(1.0)
        assert shape.body.ambient_dim == 4

    def test_box_name_lookup(self):
        shape = reference_body("box4d")
        assert shape.body.dim == 3

    def test_unknown_body_rejected(self):
        with pytest.raises(KeyError):
            reference_body("pentagon")
