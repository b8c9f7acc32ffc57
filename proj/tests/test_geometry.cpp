// SPDX-License-Identifier: MIT

/// @file test_geometry.cpp
/// @brief Domains, profiles, frames, curvature conventions, and the
///        normal-offset map.

#include <cmath>
#include <vector>

#include "doctest.h"

#include "bpx/geometry.hpp"

using namespace bpx;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

TEST_CASE("reference domains validate their parameters") {
  CHECK_NOTHROW(ReferenceDomain::interval(0.0, 1.0));
  CHECK_THROWS_AS(ReferenceDomain::interval(1.0, 1.0), GeometryError);
  CHECK_THROWS_AS(ReferenceDomain::rectangle(0.0, 1.0), GeometryError);
  CHECK_THROWS_AS(ReferenceDomain::disk(-2.0), GeometryError);
  CHECK_THROWS_AS(ReferenceDomain::annulus(1.0, 0.5), GeometryError);
  CHECK_THROWS_AS(ReferenceDomain::disk_with_interface(1.0, 1.0),
                  GeometryError);

  auto ann = ReferenceDomain::annulus(0.5, 2.0);
  CHECK(ann.inner_radius() == 0.5);
  CHECK(ann.radius() == 2.0);
  CHECK(ann.boundary_segments() ==
        std::vector<SegmentId>{SegmentId::AnnulusInner,
                               SegmentId::AnnulusOuter});
  CHECK(ann.perturbed_segment() == SegmentId::AnnulusOuter);

  auto dwi = ReferenceDomain::disk_with_interface(0.5, 1.0);
  CHECK(dwi.has_interface());
  CHECK(dwi.boundary_segments() == std::vector<SegmentId>{SegmentId::Circle});
  CHECK(dwi.perturbed_segment() == SegmentId::InterfaceCircle);
}

TEST_CASE("profile sign classification") {
  CHECK(BoundaryProfile::constant(1.0).sign_class() ==
        BoundaryProfile::SignClass::StrictlyPositiveOnGamma);
  CHECK(BoundaryProfile::cosine(1.0, 0.5, 3).sign_class() ==
        BoundaryProfile::SignClass::StrictlyPositiveOnGamma);
  CHECK(BoundaryProfile::cosine(1.0, 1.0, 2).sign_class() ==
        BoundaryProfile::SignClass::NonNegative);
  CHECK(BoundaryProfile::cosine(0.0, 1.0, 1).sign_class() ==
        BoundaryProfile::SignClass::Signed);
  CHECK(BoundaryProfile::zero().sign_class() ==
        BoundaryProfile::SignClass::NonNegative);
}

TEST_CASE("profile derivatives are analytic") {
  auto h = BoundaryProfile::cosine(0.3, 0.2, 4);
  const double t = 0.7;
  CHECK(h.value(t) == doctest::Approx(0.3 + 0.2 * std::cos(4 * t)).epsilon(1e-14));
  CHECK(h.d1(t) == doctest::Approx(-0.8 * std::sin(4 * t)).epsilon(1e-14));
  CHECK(h.d2(t) == doctest::Approx(-3.2 * std::cos(4 * t)).epsilon(1e-14));

  auto p = BoundaryProfile::poly({1.0, 2.0, 3.0}, {0.0, 1.0});
  CHECK(p.value(0.5) == doctest::Approx(1.0 + 1.0 + 0.75).epsilon(1e-14));
  CHECK(p.d1(0.5) == doctest::Approx(2.0 + 3.0).epsilon(1e-14));
  CHECK(p.d2(0.5) == doctest::Approx(6.0).epsilon(1e-14));

  // Interval endpoint ramp: h(a)=0, h(b)=1.
  auto ramp = BoundaryProfile::poly({0.0, 1.0}, {0.0, 1.0});
  CHECK(ramp.value(0.0) == 0.0);
  CHECK(ramp.value(1.0) == 1.0);
}

TEST_CASE("circle frame carries the outward-normal curvature convention") {
  auto frame = CurvilinearFrame::circle(2.0);
  for (int j = 0; j < 16; ++j) {
    double t = 2.0 * kPi * j / 16.0;
    Point tau = frame.unit_tangent(t);
    Point nrm = frame.outward_normal(t);
    CHECK(std::abs(tau.x * tau.x + tau.y * tau.y - 1.0) < 1e-12);
    CHECK(std::abs(nrm.x * nrm.x + nrm.y * nrm.y - 1.0) < 1e-12);
    CHECK(std::abs(tau.x * nrm.x + tau.y * nrm.y) < 1e-12);
    CHECK(frame.curvature(t) == doctest::Approx(0.5).epsilon(1e-14));
    // dtau/ds = -kappa n, checked by finite differences in arc length.
    double dt = 1e-6;
    Point taup = frame.unit_tangent(t + dt);
    double ds = dt * frame.arc_length_per_param();
    CHECK(std::abs((taup.x - tau.x) / ds + frame.curvature(t) * nrm.x) < 1e-5);
    CHECK(std::abs((taup.y - tau.y) / ds + frame.curvature(t) * nrm.y) < 1e-5);
  }
  CHECK(frame.arc_length_per_param() == doctest::Approx(2.0));

  auto inner = CurvilinearFrame::circle_inward(0.5);
  CHECK(inner.curvature(0.3) == doctest::Approx(-2.0).epsilon(1e-14));
  Point n_in = inner.outward_normal(0.0);
  CHECK(n_in.x == doctest::Approx(-1.0));
}

TEST_CASE("unit circle has curvature +1") {
  auto d = ReferenceDomain::disk(1.0);
  CHECK(curvature(d, SegmentId::Circle, 1.234) ==
        doctest::Approx(1.0).epsilon(1e-14));
  auto ann = ReferenceDomain::annulus(0.5, 2.0);
  CHECK(curvature(ann, SegmentId::AnnulusInner, 0.1) ==
        doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(curvature(ann, SegmentId::AnnulusOuter, 0.1) ==
        doctest::Approx(0.5).epsilon(1e-14));
  auto rect = ReferenceDomain::rectangle(2.0, 1.0);
  CHECK(curvature(rect, SegmentId::RectRight, 0.5) == 0.0);
  CHECK_THROWS_AS(curvature(rect, SegmentId::RectRight, 0.0), GeometryError);
}

TEST_CASE("layer jacobian and the annulus area identity") {
  auto frame = CurvilinearFrame::circle(1.5);
  CHECK(layer_jacobian(frame, 0.2, 0.3) ==
        doctest::Approx(1.0 + 0.3 / 1.5).epsilon(1e-14));
  CHECK_THROWS_AS(layer_jacobian(frame, 0.0, -1.5), GeometryError);

  // Area of the layer between circle R and circle R + eps computed from the
  // offset-map jacobian must equal 2*pi*R*eps + pi*eps^2.
  const double R = 1.3, eps = 0.12;
  auto circ = CurvilinearFrame::circle(R);
  const int n = 256;
  double area = 0.0;
  for (int j = 0; j < n; ++j) {
    double t0 = 2.0 * kPi * j / n;
    // transverse integral of layer_jacobian over [0, eps] by Simpson's rule
    double j0 = layer_jacobian(circ, t0, 0.0);
    double jm = layer_jacobian(circ, t0, 0.5 * eps);
    double j1 = layer_jacobian(circ, t0, eps);
    double radial = eps * (j0 + 4.0 * jm + j1) / 6.0;
    area += radial * (2.0 * kPi / n) * circ.arc_length_per_param();
  }
  CHECK(std::abs(area - (2.0 * kPi * R * eps + kPi * eps * eps)) < 1e-10);
}

TEST_CASE("perturbed point: identity at eps = 0 and folding guard") {
  auto d = ReferenceDomain::disk(1.0);
  auto h = BoundaryProfile::cosine(1.0, 0.5, 2);

  Point p0 = perturbed_point(d, h, 0.0, 0.9);
  CHECK(p0.x == std::cos(0.9));
  CHECK(p0.y == std::sin(0.9));

  Point p = perturbed_point(d, h, 0.1, 0.0);
  CHECK(p.x == doctest::Approx(1.0 + 0.1 * 1.5).epsilon(1e-14));
  CHECK(p.y == doctest::Approx(0.0));

  // eps*max|h*kappa| >= 1 folds the offset map.
  auto big = BoundaryProfile::constant(-1.0);
  CHECK_THROWS_AS(perturbed_point(d, big, 1.0, 0.0), GeometryError);
  CHECK_NOTHROW(perturbed_point(d, big, 0.9, 0.0));
}

TEST_CASE("perturbed point on interval endpoints and the rectangle edge") {
  auto iv = ReferenceDomain::interval(0.0, 1.0);
  auto ramp = BoundaryProfile::poly({0.0, 1.0}, {0.0, 1.0});
  Point right = perturbed_point(iv, ramp, 0.25, 1.0);
  CHECK(right.x == doctest::Approx(1.25).epsilon(1e-14));
  Point left = perturbed_point(iv, ramp, 0.25, 0.0);
  CHECK(left.x == doctest::Approx(0.0).epsilon(1e-14));  // h(0) = 0
  CHECK_THROWS_AS(perturbed_point(iv, ramp, 0.25, 0.5), GeometryError);

  auto rect = ReferenceDomain::rectangle(2.0, 1.0);
  auto h = BoundaryProfile::cosine(1.0, 0.0, 1, {0.0, 1.0});
  Point q = perturbed_point(rect, h, 0.1, 0.4);
  CHECK(q.x == doctest::Approx(2.1).epsilon(1e-14));
  CHECK(q.y == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("boundary grids: spacing and sampling") {
  auto circ = CurvilinearFrame::circle(2.0);
  BoundaryGrid g(circ, 16);
  CHECK(g.ds() == doctest::Approx(2.0 * kPi * 2.0 / 16.0).epsilon(1e-14));
  CHECK(g.param(0) == 0.0);
  CHECK(g.param(8) == doctest::Approx(kPi).epsilon(1e-14));
  auto vals = g.sample([](double t) { return std::sin(t); });
  CHECK(vals.size() == 16);
  CHECK(vals[4] == doctest::Approx(1.0).epsilon(1e-14));

  auto edge = CurvilinearFrame::rect_right_edge(2.0, 1.0);
  BoundaryGrid ge(edge, 9);
  CHECK(ge.ds() == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  CHECK(ge.param(8) == doctest::Approx(1.0).epsilon(1e-14));

  auto endpoint = CurvilinearFrame::interval_endpoint(1.0, +1);
  CHECK_NOTHROW(BoundaryGrid(endpoint, 1));
  CHECK_THROWS_AS(BoundaryGrid(endpoint, 4), GridError);
  CHECK_THROWS_AS(BoundaryGrid(circ, 4), GridError);
}

TEST_CASE("segment frames exist exactly for perturbable segments") {
  auto rect = ReferenceDomain::rectangle(2.0, 1.0);
  CHECK_NOTHROW(segment_frame(rect, SegmentId::RectRight));
  CHECK_THROWS_AS(segment_frame(rect, SegmentId::RectLeft), GeometryError);

  auto dwi = ReferenceDomain::disk_with_interface(0.5, 1.0);
  auto f = segment_frame(dwi, SegmentId::InterfaceCircle);
  CHECK(f.curvature(0.0) == doctest::Approx(2.0).epsilon(1e-14));
  auto iv = ReferenceDomain::interval(0.0, 1.0);
  auto fr = segment_frame(iv, SegmentId::IntervalRight);
  CHECK(fr.is_point());
  CHECK(fr.outward_normal(0.0).x == 1.0);
  auto fl = segment_frame(iv, SegmentId::IntervalLeft);
  CHECK(fl.outward_normal(0.0).x == -1.0);
}
