// SPDX-License-Identifier: MIT

/// @file bvp.cpp
/// @brief Validation and serialization of boundary-value problem specs.

#include "bpx/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>


namespace bpx {

// ---------------------------------------------------------------------------
// EllipticOperator
// ---------------------------------------------------------------------------

EllipticOperator EllipticOperator::isotropic(double sigma, double c) {
  EllipticOperator op;
  CoefficientSet cs;
  cs.a = [sigma](Point) { return Matrix2{sigma, 0.0, sigma}; };
  cs.c = [c](Point) { return c; };
  op.sets_ = {std::move(cs)};
  op.iso_const_ = true;
  op.sigma_const_ = {sigma};
  return op;
}

EllipticOperator EllipticOperator::isotropic_fn(ScalarFn sigma, ScalarFn c) {
  EllipticOperator op;
  CoefficientSet cs;
  cs.a = [sigma](Point p) {
    double s = sigma(p);
    return Matrix2{s, 0.0, s};
  };
  cs.c = std::move(c);
  op.sets_ = {std::move(cs)};
  return op;
}

EllipticOperator EllipticOperator::general(CoefficientSet coeffs) {
  EllipticOperator op;
  op.sets_ = {std::move(coeffs)};
  return op;
}

EllipticOperator EllipticOperator::piecewise(EllipticOperator interior,
                                             EllipticOperator exterior) {
  if (interior.is_piecewise() || exterior.is_piecewise())
    throw UnsupportedError("piecewise operators cannot be nested");
  EllipticOperator op;
  op.sets_ = {interior.sets_[0], exterior.sets_[0]};
  op.piecewise_ = true;
  op.iso_const_ = interior.iso_const_ && exterior.iso_const_;
  if (op.iso_const_)
    op.sigma_const_ = {interior.sigma_const_[0], exterior.sigma_const_[0]};
  return op;
}

const CoefficientSet& EllipticOperator::coeffs() const {
  if (piecewise_)
    throw UnsupportedError("coeffs() on a piecewise operator; use "
                           "interior()/exterior()");
  return sets_[0];
}

const CoefficientSet& EllipticOperator::interior() const { return sets_[0]; }

const CoefficientSet& EllipticOperator::exterior() const {
  return piecewise_ ? sets_[1] : sets_[0];
}

double EllipticOperator::sigma_constant() const {
  if (!iso_const_ || piecewise_)
    throw UnsupportedError("operator has no single constant diffusion");
  return sigma_const_[0];
}

double EllipticOperator::sigma_constant_interior() const {
  if (!iso_const_) throw UnsupportedError("diffusion is not constant");
  return sigma_const_[0];
}

double EllipticOperator::sigma_constant_exterior() const {
  if (!iso_const_) throw UnsupportedError("diffusion is not constant");
  return sigma_const_.size() > 1 ? sigma_const_[1] : sigma_const_[0];
}

// ---------------------------------------------------------------------------
// BoundaryCondition factories
// ---------------------------------------------------------------------------

BoundaryCondition BoundaryCondition::dirichlet(SegmentId seg,
                                               BoundaryField g) {
  BoundaryCondition bc;
  bc.segment = seg;
  bc.kind = BcKind::Dirichlet;
  bc.g = std::move(g);
  return bc;
}

BoundaryCondition BoundaryCondition::neumann(SegmentId seg, BoundaryField g) {
  BoundaryCondition bc;
  bc.segment = seg;
  bc.kind = BcKind::Neumann;
  bc.g = std::move(g);
  return bc;
}

BoundaryCondition BoundaryCondition::robin(SegmentId seg, BoundaryField alpha,
                                           BoundaryField beta,
                                           BoundaryField g) {
  BoundaryCondition bc;
  bc.segment = seg;
  bc.kind = BcKind::Robin;
  bc.alpha = std::move(alpha);
  bc.beta = std::move(beta);
  bc.g = std::move(g);
  return bc;
}

BoundaryCondition BoundaryCondition::neumann_with_pin(SegmentId seg,
                                                      BoundaryField g,
                                                      BoundaryField pin_weight,
                                                      double compat_value) {
  BoundaryCondition bc;
  bc.segment = seg;
  bc.kind = BcKind::NeumannWithCompatibility;
  bc.g = std::move(g);
  bc.pin_weight = std::move(pin_weight);
  bc.compat_value = compat_value;
  return bc;
}

BoundaryCondition BoundaryCondition::transmission(SegmentId seg,
                                                  BoundaryField value_jump,
                                                  BoundaryField flux_jump) {
  BoundaryCondition bc;
  bc.segment = seg;
  bc.kind = BcKind::TransmissionJump;
  bc.value_jump = std::move(value_jump);
  bc.flux_jump = std::move(flux_jump);
  return bc;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

namespace {

/// Sample points inside the domain for the pointwise coefficient checks.
std::vector<Point> coefficient_lattice(const ReferenceDomain& dom) {
  std::vector<Point> pts;
  switch (dom.kind()) {
    case DomainKind::Interval: {
      for (int i = 0; i <= 32; ++i) {
        double x = dom.a() + (dom.b() - dom.a()) * i / 32.0;
        pts.push_back({x, 0.0});
      }
      break;
    }
    case DomainKind::Rectangle: {
      for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j)
          pts.push_back({dom.length_x() * i / 8.0, dom.length_y() * j / 8.0});
      break;
    }
    case DomainKind::Disk:
    case DomainKind::Annulus:
    case DomainKind::DiskWithInterface: {
      double r0 = dom.kind() == DomainKind::Annulus ? dom.inner_radius() : 0.0;
      double r1 = dom.radius();
      for (int i = 0; i <= 8; ++i)
        for (int j = 0; j < 16; ++j) {
          double r = r0 + (r1 - r0) * i / 8.0;
          double th = 2.0 * 3.14159265358979323846 * j / 16.0;
          pts.push_back({r * std::cos(th), r * std::sin(th)});
        }
      break;
    }
  }
  return pts;
}

void check_coefficients(const CoefficientSet& cs,
                        const std::vector<Point>& pts) {
  for (const Point& p : pts) {
    Matrix2 a = cs.a(p);
    // SPD for a symmetric 2x2: positive trace-leading minor and determinant.
    if (!(a.xx > 0.0) || !(a.xx * a.yy - a.xy * a.xy > 0.0))
      throw EllipticityError("diffusion matrix is not SPD at a sample point");
    if (cs.c(p) < 0.0)
      throw EllipticityError("reaction coefficient is negative at a sample point");
  }
}

}  // namespace

BvpSpec validate(BvpSpec spec) {
  const std::vector<Point> pts = coefficient_lattice(spec.domain);
  check_coefficients(spec.op.interior(), pts);
  if (spec.op.is_piecewise()) check_coefficients(spec.op.exterior(), pts);

  // Exactly one condition per boundary segment.
  std::vector<SegmentId> required = spec.domain.boundary_segments();
  std::map<SegmentId, int> seen;
  for (const auto& bc : spec.bcs) {
    if (bc.kind == BcKind::TransmissionJump)
      throw CoverageError("transmission jumps belong in interface_conditions");
    seen[bc.segment]++;
  }
  for (SegmentId seg : required) {
    auto it = seen.find(seg);
    if (it == seen.end())
      throw CoverageError("boundary segment lacks a condition");
    if (it->second != 1)
      throw CoverageError("boundary segment has more than one condition");
  }
  if (seen.size() != required.size())
    throw CoverageError("condition attached to a segment the domain lacks");

  // Robin sanity.
  for (const auto& bc : spec.bcs) {
    if (bc.kind != BcKind::Robin) continue;
    auto all_zero = [](const BoundaryField& v) {
      return std::all_of(v.begin(), v.end(),
                         [](double x) { return x == 0.0; });
    };
    if ((bc.alpha.empty() || all_zero(bc.alpha)) &&
        (bc.beta.empty() || all_zero(bc.beta)))
      throw CoverageError("Robin condition with alpha and beta both zero");
  }

  // Pure Neumann without a pin has a one-dimensional kernel.
  const bool all_neumann =
      !spec.bcs.empty() &&
      std::all_of(spec.bcs.begin(), spec.bcs.end(), [](const auto& bc) {
        return bc.kind == BcKind::Neumann;
      });
  if (all_neumann) {
    bool reaction_present = false;
    for (const Point& p : pts)
      if (spec.op.interior().c(p) > 0.0) reaction_present = true;
    if (!reaction_present)
      throw CompatibilityMissing(
          "all-Neumann problem without a compatibility pin");
  }

  if (spec.op.is_piecewise() && !spec.interface_conditions)
    throw CoverageError("piecewise operator without interface conditions");
  if (spec.interface_conditions &&
      spec.domain.kind() == DomainKind::Interval && !spec.interval_interface)
    throw CoverageError("interval interface conditions need a position");

  spec.validated = true;
  return spec;
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

namespace {

const char* kind_name(BcKind k) {
  switch (k) {
    case BcKind::Dirichlet:
      return "Dirichlet";
    case BcKind::Neumann:
      return "Neumann";
    case BcKind::Robin:
      return "Robin";
    case BcKind::NeumannWithCompatibility:
      return "NeumannWithCompatibility";
    case BcKind::TransmissionJump:
      return "TransmissionJump";
  }
  return "?";
}

const char* domain_name(DomainKind k) {
  switch (k) {
    case DomainKind::Interval:
      return "Interval";
    case DomainKind::Rectangle:
      return "Rectangle";
    case DomainKind::Disk:
      return "Disk";
    case DomainKind::Annulus:
      return "Annulus";
    case DomainKind::DiskWithInterface:
      return "DiskWithInterface";
  }
  return "?";
}

nlohmann::json sampled_coeffs(const CoefficientSet& cs,
                              const std::vector<Point>& pts) {
  nlohmann::json j;
  std::vector<double> a_flat;  // row-major 2x2 per point
  std::vector<double> b_flat, c_flat;
  for (const Point& p : pts) {
    Matrix2 a = cs.a(p);
    a_flat.insert(a_flat.end(), {a.xx, a.xy, a.xy, a.yy});
    b_flat.insert(b_flat.end(), {cs.b1(p), cs.b2(p)});
    c_flat.push_back(cs.c(p));
  }
  j["a"] = a_flat;
  j["b"] = b_flat;
  j["c"] = c_flat;
  return j;
}

}  // namespace

nlohmann::json BvpSpec::to_json() const {
  nlohmann::json j;
  j["domain"] = domain_name(domain.kind());
  const std::vector<Point> pts = coefficient_lattice(domain);
  j["operator"]["piecewise"] = op.is_piecewise();
  j["operator"]["interior"] = sampled_coeffs(op.interior(), pts);
  if (op.is_piecewise())
    j["operator"]["exterior"] = sampled_coeffs(op.exterior(), pts);
  std::vector<double> f;
  for (const Point& p : pts) f.push_back(rhs(p));
  j["rhs"] = f;
  j["bcs"] = nlohmann::json::array();
  for (const auto& bc : bcs) {
    nlohmann::json b;
    b["segment"] = static_cast<int>(bc.segment);
    b["kind"] = kind_name(bc.kind);
    b["g"] = bc.g;
    if (!bc.alpha.empty()) b["alpha"] = bc.alpha;
    if (!bc.beta.empty()) b["beta"] = bc.beta;
    if (bc.kind == BcKind::NeumannWithCompatibility) {
      b["compat_value"] = bc.compat_value;
      b["pin_weight"] = bc.pin_weight;
    }
    j["bcs"].push_back(b);
  }
  if (interface_conditions) {
    j["interface_conditions"]["value_jump"] = interface_conditions->value_jump;
    j["interface_conditions"]["flux_jump"] = interface_conditions->flux_jump;
  }
  j["validated"] = validated;
  return j;
}

}  // namespace bpx
