// SPDX-License-Identifier: MIT

/// @file geometry.cpp
/// @brief Reference domains, profiles, frames, and normal-offset maps.

#include "bpx/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bpx {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
// Relative tolerance for classifying sampled profile values as zero.
constexpr double kSignTol = 1e-12;
}  // namespace

// ---------------------------------------------------------------------------
// ReferenceDomain
// ---------------------------------------------------------------------------

ReferenceDomain ReferenceDomain::interval(double a, double b) {
  if (!(a < b)) throw GeometryError("interval requires a < b");
  return {DomainKind::Interval, a, b};
}

ReferenceDomain ReferenceDomain::rectangle(double length_x, double length_y) {
  if (!(length_x > 0.0) || !(length_y > 0.0))
    throw GeometryError("rectangle requires positive side lengths");
  return {DomainKind::Rectangle, length_x, length_y};
}

ReferenceDomain ReferenceDomain::disk(double radius) {
  if (!(radius > 0.0)) throw GeometryError("disk requires positive radius");
  return {DomainKind::Disk, radius, 0.0};
}

ReferenceDomain ReferenceDomain::annulus(double inner_radius,
                                         double outer_radius) {
  if (!(0.0 < inner_radius) || !(inner_radius < outer_radius))
    throw GeometryError("annulus requires 0 < R_in < R_out");
  return {DomainKind::Annulus, inner_radius, outer_radius};
}

ReferenceDomain ReferenceDomain::disk_with_interface(double interface_radius,
                                                     double outer_radius) {
  if (!(0.0 < interface_radius) || !(interface_radius < outer_radius))
    throw GeometryError("disk_with_interface requires 0 < R_interface < R");
  return {DomainKind::DiskWithInterface, interface_radius, outer_radius};
}

void ReferenceDomain::require(DomainKind kind, const char* what) const {
  if (kind_ != kind)
    throw GeometryError(std::string("domain accessor '") + what +
                        "' used on the wrong domain kind");
}

double ReferenceDomain::a() const {
  require(DomainKind::Interval, "a");
  return p0_;
}

double ReferenceDomain::b() const {
  require(DomainKind::Interval, "b");
  return p1_;
}

double ReferenceDomain::length_x() const {
  require(DomainKind::Rectangle, "length_x");
  return p0_;
}

double ReferenceDomain::length_y() const {
  require(DomainKind::Rectangle, "length_y");
  return p1_;
}

double ReferenceDomain::radius() const {
  switch (kind_) {
    case DomainKind::Disk:
      return p0_;
    case DomainKind::Annulus:
    case DomainKind::DiskWithInterface:
      return p1_;
    default:
      throw GeometryError("domain accessor 'radius' used on a non-radial domain");
  }
}

double ReferenceDomain::inner_radius() const {
  require(DomainKind::Annulus, "inner_radius");
  return p0_;
}

double ReferenceDomain::interface_radius() const {
  require(DomainKind::DiskWithInterface, "interface_radius");
  return p0_;
}

std::vector<SegmentId> ReferenceDomain::boundary_segments() const {
  switch (kind_) {
    case DomainKind::Interval:
      return {SegmentId::IntervalLeft, SegmentId::IntervalRight};
    case DomainKind::Rectangle:
      return {SegmentId::RectLeft, SegmentId::RectRight, SegmentId::RectBottom,
              SegmentId::RectTop};
    case DomainKind::Disk:
      return {SegmentId::Circle};
    case DomainKind::Annulus:
      return {SegmentId::AnnulusInner, SegmentId::AnnulusOuter};
    case DomainKind::DiskWithInterface:
      return {SegmentId::Circle};
  }
  throw GeometryError("unreachable domain kind");
}

SegmentId ReferenceDomain::perturbed_segment() const {
  switch (kind_) {
    case DomainKind::Interval:
      return SegmentId::IntervalRight;  // endpoints; see perturbed_point
    case DomainKind::Rectangle:
      return SegmentId::RectRight;
    case DomainKind::Disk:
      return SegmentId::Circle;
    case DomainKind::Annulus:
      return SegmentId::AnnulusOuter;
    case DomainKind::DiskWithInterface:
      return SegmentId::InterfaceCircle;
  }
  throw GeometryError("unreachable domain kind");
}

// ---------------------------------------------------------------------------
// BoundaryProfile
// ---------------------------------------------------------------------------

BoundaryProfile::BoundaryProfile(Kind kind, std::vector<double> params,
                                 std::pair<double, double> range)
    : kind_(kind), params_(std::move(params)), range_(range) {
  classify();
}

BoundaryProfile BoundaryProfile::zero() { return constant(0.0); }

BoundaryProfile BoundaryProfile::constant(double c) {
  return {Kind::Constant, {c}, {0.0, kTwoPi}};
}

BoundaryProfile BoundaryProfile::cosine(double base, double amplitude, int k,
                                        std::pair<double, double> range) {
  return {Kind::Cosine, {base, amplitude, static_cast<double>(k)}, range};
}

BoundaryProfile BoundaryProfile::poly(std::vector<double> coeffs,
                                      std::pair<double, double> range) {
  if (coeffs.empty()) throw GeometryError("poly profile needs coefficients");
  return {Kind::Poly, std::move(coeffs), range};
}

double BoundaryProfile::value(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return params_[0];
    case Kind::Cosine:
      return params_[0] + params_[1] * std::cos(params_[2] * t);
    case Kind::Poly: {
      double v = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it)
        v = v * t + *it;
      return v;
    }
  }
  throw GeometryError("unreachable profile kind");
}

double BoundaryProfile::d1(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Cosine:
      return -params_[1] * params_[2] * std::sin(params_[2] * t);
    case Kind::Poly: {
      double v = 0.0;
      for (std::size_t i = params_.size(); i-- > 1;)
        v = v * t + static_cast<double>(i) * params_[i];
      return v;
    }
  }
  throw GeometryError("unreachable profile kind");
}

double BoundaryProfile::d2(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Cosine:
      return -params_[1] * params_[2] * params_[2] * std::cos(params_[2] * t);
    case Kind::Poly: {
      double v = 0.0;
      for (std::size_t i = params_.size(); i-- > 2;)
        v = v * t + static_cast<double>(i) * static_cast<double>(i - 1) *
                        params_[i];
      return v;
    }
  }
  throw GeometryError("unreachable profile kind");
}

void BoundaryProfile::classify() {
  constexpr int kSamples = 4096;
  double lo = range_.first, hi = range_.second;
  double vmin = value(lo), vmax = value(lo);
  max_abs_ = std::abs(value(lo));
  for (int i = 1; i <= kSamples; ++i) {
    double t = lo + (hi - lo) * static_cast<double>(i) / kSamples;
    double v = value(t);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    max_abs_ = std::max(max_abs_, std::abs(v));
  }
  double scale = std::max(1.0, max_abs_);
  if (vmin > kSignTol * scale)
    sign_class_ = SignClass::StrictlyPositiveOnGamma;
  else if (vmin >= -kSignTol * scale)
    sign_class_ = SignClass::NonNegative;
  else
    sign_class_ = SignClass::Signed;
}

// ---------------------------------------------------------------------------
// CurvilinearFrame
// ---------------------------------------------------------------------------

CurvilinearFrame CurvilinearFrame::circle(double radius) {
  if (!(radius > 0.0)) throw GeometryError("circle frame needs R > 0");
  CurvilinearFrame f;
  f.radius_ = radius;
  f.is_circle_ = true;
  f.periodic_ = true;
  f.normal_sign_ = 1;
  f.t0_ = 0.0;
  f.t1_ = kTwoPi;
  f.arc_per_param_ = radius;
  return f;
}

CurvilinearFrame CurvilinearFrame::circle_inward(double radius) {
  CurvilinearFrame f = circle(radius);
  f.normal_sign_ = -1;
  return f;
}

CurvilinearFrame CurvilinearFrame::rect_right_edge(double length_x,
                                                   double length_y) {
  if (!(length_x > 0.0) || !(length_y > 0.0))
    throw GeometryError("rectangle edge frame needs positive side lengths");
  CurvilinearFrame f;
  f.edge_x_ = length_x;
  f.periodic_ = false;
  f.t0_ = 0.0;
  f.t1_ = length_y;
  f.arc_per_param_ = 1.0;
  return f;
}

CurvilinearFrame CurvilinearFrame::interval_endpoint(double x,
                                                     int normal_sign) {
  CurvilinearFrame f;
  f.edge_x_ = x;
  f.point_ = true;
  f.normal_sign_ = normal_sign >= 0 ? 1 : -1;
  f.t0_ = 0.0;
  f.t1_ = 0.0;
  f.arc_per_param_ = 1.0;
  return f;
}

Point CurvilinearFrame::position(double t) const {
  if (point_) return {edge_x_, 0.0};
  if (is_circle_) return {radius_ * std::cos(t), radius_ * std::sin(t)};
  return {edge_x_, t};
}

Point CurvilinearFrame::unit_tangent(double t) const {
  if (point_) return {0.0, 0.0};
  if (is_circle_) return {-std::sin(t), std::cos(t)};
  return {0.0, 1.0};
}

Point CurvilinearFrame::outward_normal(double t) const {
  if (point_) return {static_cast<double>(normal_sign_), 0.0};
  if (is_circle_)
    return {normal_sign_ * std::cos(t), normal_sign_ * std::sin(t)};
  return {1.0, 0.0};
}

double CurvilinearFrame::curvature(double /*t*/) const {
  if (point_) return 0.0;
  // dtau/ds = -kappa * n: a circle with outward (radial) normal has
  // kappa = +1/R; flipping the normal flips the sign.
  if (is_circle_) return static_cast<double>(normal_sign_) / radius_;
  return 0.0;
}

// ---------------------------------------------------------------------------
// BoundaryGrid
// ---------------------------------------------------------------------------

BoundaryGrid::BoundaryGrid(CurvilinearFrame frame, int n_nodes)
    : frame_(frame), n_(n_nodes) {
  if (frame_.is_point()) {
    if (n_ != 1) throw GridError("endpoint grids hold exactly one node");
    dt_ = 1.0;
    return;
  }
  if (n_ < 8) throw GridError("boundary grids need at least 8 nodes");
  double span = frame_.param_end() - frame_.param_begin();
  dt_ = frame_.periodic() ? span / n_ : span / (n_ - 1);
}

std::vector<double> BoundaryGrid::params() const {
  std::vector<double> t(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) t[static_cast<std::size_t>(j)] = param(j);
  return t;
}

std::vector<double> BoundaryGrid::sample(
    const std::function<double(double)>& f) const {
  std::vector<double> v(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) v[static_cast<std::size_t>(j)] = f(param(j));
  return v;
}

// ---------------------------------------------------------------------------
// Offset maps and curvature queries
// ---------------------------------------------------------------------------

CurvilinearFrame segment_frame(const ReferenceDomain& domain,
                               SegmentId segment) {
  switch (segment) {
    case SegmentId::IntervalLeft:
      return CurvilinearFrame::interval_endpoint(domain.a(), -1);
    case SegmentId::IntervalRight:
      return CurvilinearFrame::interval_endpoint(domain.b(), +1);
    case SegmentId::RectRight:
      return CurvilinearFrame::rect_right_edge(domain.length_x(),
                                               domain.length_y());
    case SegmentId::Circle:
      return CurvilinearFrame::circle(domain.radius());
    case SegmentId::AnnulusInner:
      return CurvilinearFrame::circle_inward(domain.inner_radius());
    case SegmentId::AnnulusOuter:
      return CurvilinearFrame::circle(domain.radius());
    case SegmentId::InterfaceCircle:
      // Oriented with the normal pointing out of the enclosed region.
      return CurvilinearFrame::circle(domain.interface_radius());
    case SegmentId::RectLeft:
    case SegmentId::RectBottom:
    case SegmentId::RectTop:
      throw GeometryError(
          "frames are only provided for segments that can carry a "
          "perturbation (right edge, circles, endpoints)");
  }
  throw GeometryError("unreachable segment id");
}

double curvature(const ReferenceDomain& domain, SegmentId segment, double t) {
  constexpr double kCornerTol = 1e-12;
  switch (segment) {
    case SegmentId::IntervalLeft:
    case SegmentId::IntervalRight:
      return 0.0;
    case SegmentId::Circle:
      return 1.0 / domain.radius();
    case SegmentId::AnnulusOuter:
      return 1.0 / domain.radius();
    case SegmentId::AnnulusInner:
      return -1.0 / domain.inner_radius();
    case SegmentId::InterfaceCircle:
      return 1.0 / domain.interface_radius();
    case SegmentId::RectLeft:
    case SegmentId::RectRight: {
      if (t < kCornerTol || t > domain.length_y() - kCornerTol)
        throw GeometryError("curvature query at a rectangle corner");
      return 0.0;
    }
    case SegmentId::RectBottom:
    case SegmentId::RectTop: {
      if (t < kCornerTol || t > domain.length_x() - kCornerTol)
        throw GeometryError("curvature query at a rectangle corner");
      return 0.0;
    }
  }
  throw GeometryError("unreachable segment id");
}

double layer_jacobian(const CurvilinearFrame& frame, double s, double t) {
  double kappa = frame.curvature(s);
  if (std::abs(t * kappa) >= 1.0)
    throw GeometryError("normal offset exceeds the curvature radius");
  return 1.0 + t * kappa;
}

Point perturbed_point(const ReferenceDomain& domain, const BoundaryProfile& h,
                      double eps, double t) {
  // Interval endpoints: t selects the endpoint by coordinate.
  CurvilinearFrame frame = [&] {
    if (domain.kind() == DomainKind::Interval) {
      constexpr double kEndTol = 1e-12;
      if (std::abs(t - domain.a()) < kEndTol)
        return segment_frame(domain, SegmentId::IntervalLeft);
      if (std::abs(t - domain.b()) < kEndTol)
        return segment_frame(domain, SegmentId::IntervalRight);
      throw GeometryError("interval perturbation is defined at the endpoints");
    }
    return segment_frame(domain, domain.perturbed_segment());
  }();

  if (eps != 0.0 && !frame.is_point()) {
    // Injectivity of x + eps*h*n requires eps*|h*kappa| < 1 everywhere.
    constexpr int kSamples = 2048;
    double t0 = frame.param_begin(), t1 = frame.param_end();
    double worst = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
      double ti = t0 + (t1 - t0) * static_cast<double>(i) / kSamples;
      worst = std::max(worst,
                       std::abs(h.value(ti) * frame.curvature(ti)));
    }
    if (std::abs(eps) * worst >= 1.0)
      throw GeometryError("perturbation folds the boundary (eps*h*kappa >= 1)");
  }

  Point p = frame.position(t);
  if (eps == 0.0) return p;  // exact identity, no rounding through the axpy
  Point n = frame.outward_normal(t);
  double hv = h.value(t);
  return {p.x + eps * hv * n.x, p.y + eps * hv * n.y};
}

}  // namespace bpx
