// SPDX-License-Identifier: MIT

/// @file test_bvp.cpp
/// @brief Problem-spec validation: ellipticity, boundary coverage,
///        compatibility pins, and the JSON rendering.

#include <cmath>

#include "doctest.h"

#include "bpx/bvp.hpp"

using namespace bpx;

namespace {

BvpSpec disk_poisson() {
  BvpSpec spec;
  spec.domain = ReferenceDomain::disk(1.0);
  spec.op = EllipticOperator::isotropic(1.0);
  spec.rhs = [](Point) { return 4.0; };
  spec.bcs = {BoundaryCondition::dirichlet(SegmentId::Circle, {0.0})};
  return spec;
}

}  // namespace

TEST_CASE("a well-posed Poisson problem validates") {
  BvpSpec spec = validate(disk_poisson());
  CHECK(spec.validated);
  // validate is idempotent
  CHECK_NOTHROW(validate(spec));
}

TEST_CASE("indefinite diffusion is rejected") {
  BvpSpec spec = disk_poisson();
  CoefficientSet cs;
  cs.a = [](Point) { return Matrix2{1.0, 0.0, -1.0}; };
  spec.op = EllipticOperator::general(cs);
  CHECK_THROWS_AS(validate(spec), EllipticityError);
}

TEST_CASE("negative reaction is rejected") {
  BvpSpec spec = disk_poisson();
  spec.op = EllipticOperator::isotropic_fn([](Point) { return 1.0; },
                                           [](Point p) { return -p.x; });
  CHECK_THROWS_AS(validate(spec), EllipticityError);
}

TEST_CASE("boundary coverage must be exact") {
  BvpSpec spec = disk_poisson();
  spec.bcs.clear();
  CHECK_THROWS_AS(validate(spec), CoverageError);

  spec = disk_poisson();
  spec.bcs.push_back(BoundaryCondition::neumann(SegmentId::Circle, {0.0}));
  CHECK_THROWS_AS(validate(spec), CoverageError);

  // A rectangle needs all four edges.
  BvpSpec rect;
  rect.domain = ReferenceDomain::rectangle(1.0, 1.0);
  rect.rhs = [](Point) { return 1.0; };
  rect.bcs = {BoundaryCondition::dirichlet(SegmentId::RectLeft, {0.0}),
              BoundaryCondition::dirichlet(SegmentId::RectRight, {0.0}),
              BoundaryCondition::dirichlet(SegmentId::RectBottom, {0.0})};
  CHECK_THROWS_AS(validate(rect), CoverageError);
  rect.bcs.push_back(BoundaryCondition::dirichlet(SegmentId::RectTop, {0.0}));
  CHECK_NOTHROW(validate(rect));
}

TEST_CASE("all-Neumann problems need a pin") {
  BvpSpec spec = disk_poisson();
  spec.rhs = [](Point) { return -2.0; };
  spec.bcs = {BoundaryCondition::neumann(SegmentId::Circle, {1.0})};
  CHECK_THROWS_AS(validate(spec), CompatibilityMissing);

  spec.bcs = {BoundaryCondition::neumann_with_pin(SegmentId::Circle, {1.0},
                                                  {1.0}, 0.0)};
  CHECK_NOTHROW(validate(spec));

  // Positive reaction fixes the constant without a pin.
  spec.bcs = {BoundaryCondition::neumann(SegmentId::Circle, {1.0})};
  spec.op = EllipticOperator::isotropic(1.0, 0.5);
  CHECK_NOTHROW(validate(spec));
}

TEST_CASE("degenerate Robin data is rejected") {
  BvpSpec spec = disk_poisson();
  spec.bcs = {
      BoundaryCondition::robin(SegmentId::Circle, {0.0}, {0.0}, {1.0})};
  CHECK_THROWS_AS(validate(spec), CoverageError);
}

TEST_CASE("transmission data may not pose as a boundary condition") {
  BvpSpec spec = disk_poisson();
  spec.bcs.push_back(
      BoundaryCondition::transmission(SegmentId::Circle, {0.0}, {0.0}));
  CHECK_THROWS_AS(validate(spec), CoverageError);
}

TEST_CASE("piecewise operators need interface conditions") {
  BvpSpec spec;
  spec.domain = ReferenceDomain::disk_with_interface(0.5, 1.0);
  spec.op = EllipticOperator::piecewise(EllipticOperator::isotropic(2.0),
                                        EllipticOperator::isotropic(1.0));
  spec.rhs = [](Point) { return 1.0; };
  spec.bcs = {BoundaryCondition::dirichlet(SegmentId::Circle, {0.0})};
  CHECK_THROWS_AS(validate(spec), CoverageError);

  spec.interface_conditions =
      BoundaryCondition::transmission(SegmentId::InterfaceCircle, {0.0}, {0.0});
  CHECK_NOTHROW(validate(spec));

  // Interval splits also need the interface coordinate.
  BvpSpec iv;
  iv.domain = ReferenceDomain::interval(0.0, 1.0);
  iv.op = EllipticOperator::piecewise(EllipticOperator::isotropic(1.0),
                                      EllipticOperator::isotropic(2.0));
  iv.rhs = [](Point) { return 1.0; };
  iv.bcs = {BoundaryCondition::dirichlet(SegmentId::IntervalLeft, {0.0}),
            BoundaryCondition::dirichlet(SegmentId::IntervalRight, {0.0})};
  iv.interface_conditions =
      BoundaryCondition::transmission(SegmentId::IntervalRight, {0.0}, {0.0});
  CHECK_THROWS_AS(validate(iv), CoverageError);
  iv.interval_interface = 0.5;
  CHECK_NOTHROW(validate(iv));
}

TEST_CASE("operator accessors") {
  auto iso = EllipticOperator::isotropic(3.0, 0.25);
  CHECK(iso.isotropic_constant());
  CHECK(iso.sigma_constant() == 3.0);
  CHECK(iso.coeffs().a({0.3, 0.1}).xx == 3.0);
  CHECK(iso.coeffs().c({0.3, 0.1}) == 0.25);
  CHECK_FALSE(iso.is_piecewise());

  auto pw = EllipticOperator::piecewise(EllipticOperator::isotropic(2.0),
                                        EllipticOperator::isotropic(5.0));
  CHECK(pw.is_piecewise());
  CHECK(pw.sigma_constant_interior() == 2.0);
  CHECK(pw.sigma_constant_exterior() == 5.0);
  CHECK_THROWS_AS(static_cast<void>(pw.coeffs()), Error);
  CHECK_THROWS_AS(
      EllipticOperator::piecewise(pw, EllipticOperator::isotropic(1.0)),
      UnsupportedError);
}

TEST_CASE("JSON rendering carries the problem structure") {
  BvpSpec spec = validate(disk_poisson());
  auto j = spec.to_json();
  CHECK(j.contains("domain"));
  CHECK(j.contains("operator"));
  CHECK(j.contains("rhs"));
  CHECK(j.contains("bcs"));
  CHECK(j["bcs"].size() == 1);
}
