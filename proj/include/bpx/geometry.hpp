// SPDX-License-Identifier: MIT
#pragma once

/// @file geometry.hpp
/// @brief Reference domains, boundary profiles, curvilinear frames, and the
///        normal-offset maps that describe a perturbed boundary or interface.
///
/// The perturbed boundary is the image of a reference curve under
/// x -> x + eps*h(x)*n(x) with n the outward unit normal and h a scalar
/// profile. Everything downstream (trace recursions, layer transfer, closed
/// problems) consumes the frames and sampled profiles defined here.

#include <functional>
#include <utility>
#include <vector>

#include "bpx/errors.hpp"

namespace bpx {

/// A point of the plane (1D configurations use x and ignore y).
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// The supported reference-domain shapes (dimension <= 2).
enum class DomainKind { Interval, Rectangle, Disk, Annulus, DiskWithInterface };

/// Names one piece of a domain's boundary, or its internal interface circle.
enum class SegmentId {
  IntervalLeft,
  IntervalRight,
  RectLeft,
  RectRight,
  RectBottom,
  RectTop,
  Circle,           ///< the boundary circle of a disk
  AnnulusInner,
  AnnulusOuter,
  InterfaceCircle,  ///< internal interface of DiskWithInterface
};

/// Value type describing one of the supported reference domains.
///
/// Factories validate their parameters (GeometryError on violation):
/// intervals need a < b, annuli 0 < R_in < R_out, the interface circle
/// 0 < R_interface < R.
class ReferenceDomain {
 public:
  static ReferenceDomain interval(double a, double b);
  static ReferenceDomain rectangle(double length_x, double length_y);
  static ReferenceDomain disk(double radius);
  static ReferenceDomain annulus(double inner_radius, double outer_radius);
  static ReferenceDomain disk_with_interface(double interface_radius,
                                             double outer_radius);

  [[nodiscard]] DomainKind kind() const { return kind_; }

  // Interval extent.
  [[nodiscard]] double a() const;
  [[nodiscard]] double b() const;
  // Rectangle extent (0, length_x) x (0, length_y).
  [[nodiscard]] double length_x() const;
  [[nodiscard]] double length_y() const;
  // Radii.
  [[nodiscard]] double radius() const;           ///< outer radius
  [[nodiscard]] double inner_radius() const;     ///< annulus only
  [[nodiscard]] double interface_radius() const; ///< disk-with-interface only

  /// The boundary segments of this domain (the interface circle is not a
  /// boundary segment; it is reported by interface_segment()).
  [[nodiscard]] std::vector<SegmentId> boundary_segments() const;

  /// The internal interface segment, if the domain has one.
  [[nodiscard]] bool has_interface() const {
    return kind_ == DomainKind::DiskWithInterface;
  }

  /// The segment that carries the boundary perturbation for this domain
  /// kind: the interval's endpoints, the rectangle's right edge, the disk /
  /// annulus outer circle, or the interface circle.
  [[nodiscard]] SegmentId perturbed_segment() const;

 private:
  ReferenceDomain(DomainKind kind, double p0, double p1)
      : kind_(kind), p0_(p0), p1_(p1) {}
  void require(DomainKind kind, const char* what) const;

  DomainKind kind_;
  double p0_ = 0.0;
  double p1_ = 0.0;
};

/// A scalar profile h on a boundary segment, with two derivatives in the
/// segment parameter and a sign classification checked at construction.
///
/// Built-ins: constant(c), cosine(base + amp*cos(k t)), poly(sum c_i t^i).
/// The sign class is determined by dense sampling over the parameter range
/// supplied at construction (default [0, 2*pi], the circle case).
class BoundaryProfile {
 public:
  enum class SignClass { NonNegative, Signed, StrictlyPositiveOnGamma };

  static BoundaryProfile zero();
  static BoundaryProfile constant(double c);
  /// base + amplitude * cos(k * t)
  static BoundaryProfile cosine(double base, double amplitude, int k,
                                std::pair<double, double> param_range = {
                                    0.0, 6.283185307179586476925286766559});
  /// sum_i coeffs[i] * t^i
  static BoundaryProfile poly(std::vector<double> coeffs,
                              std::pair<double, double> param_range);

  [[nodiscard]] double value(double t) const;
  [[nodiscard]] double d1(double t) const;
  [[nodiscard]] double d2(double t) const;
  [[nodiscard]] SignClass sign_class() const { return sign_class_; }
  [[nodiscard]] std::pair<double, double> param_range() const {
    return range_;
  }
  /// Maximum of |h| over the sampled parameter range.
  [[nodiscard]] double max_abs() const { return max_abs_; }

 private:
  enum class Kind { Constant, Cosine, Poly };
  BoundaryProfile(Kind kind, std::vector<double> params,
                  std::pair<double, double> range);
  void classify();

  Kind kind_;
  std::vector<double> params_;
  std::pair<double, double> range_;
  SignClass sign_class_ = SignClass::Signed;
  double max_abs_ = 0.0;
};

/// An arc-length-parameterized description of one smooth boundary segment:
/// position, unit tangent, outward unit normal, and signed curvature with the
/// convention dtau/ds = -kappa * n (so a circle of radius R traversed with
/// outward normal has kappa = +1/R).
///
/// Frames are exposed in the segment's natural parameter t (angle for
/// circles, the y coordinate for the rectangle's right edge); arc length is
/// s = arc_length_per_param() * t.
class CurvilinearFrame {
 public:
  /// Circle of radius R about the origin, parameter = polar angle,
  /// outward normal = radial direction.
  static CurvilinearFrame circle(double radius);
  /// Circle of radius R whose "outward" normal points toward the center
  /// (the inner boundary of an annulus seen from the annulus).
  static CurvilinearFrame circle_inward(double radius);
  /// The rectangle edge x = length_x, parameter t = y in [0, length_y],
  /// outward normal +x.
  static CurvilinearFrame rect_right_edge(double length_x, double length_y);
  /// Endpoint of an interval: a zero-dimensional "segment" with outward
  /// normal +-x. Parameter is ignored.
  static CurvilinearFrame interval_endpoint(double x, int normal_sign);

  [[nodiscard]] Point position(double t) const;
  [[nodiscard]] Point unit_tangent(double t) const;
  [[nodiscard]] Point outward_normal(double t) const;
  [[nodiscard]] double curvature(double t) const;
  [[nodiscard]] bool periodic() const { return periodic_; }
  [[nodiscard]] bool is_point() const { return point_; }
  [[nodiscard]] double param_begin() const { return t0_; }
  [[nodiscard]] double param_end() const { return t1_; }
  [[nodiscard]] double arc_length_per_param() const { return arc_per_param_; }

 private:
  CurvilinearFrame() = default;
  double radius_ = 0.0;     // circles
  double edge_x_ = 0.0;     // rectangle edge
  int normal_sign_ = 1;     // interval endpoint / inward circles
  bool periodic_ = false;
  bool point_ = false;
  bool is_circle_ = false;
  double t0_ = 0.0, t1_ = 0.0;
  double arc_per_param_ = 1.0;
};

/// A uniform grid of nodes on a frame. Periodic frames use n nodes
/// t_j = t0 + j*dt with dt = (t1-t0)/n (node n would repeat node 0);
/// open frames use n nodes including both ends, dt = (t1-t0)/(n-1).
class BoundaryGrid {
 public:
  BoundaryGrid(CurvilinearFrame frame, int n_nodes);

  [[nodiscard]] const CurvilinearFrame& frame() const { return frame_; }
  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] bool periodic() const { return frame_.periodic(); }
  [[nodiscard]] double dt() const { return dt_; }
  /// Arc-length spacing between consecutive nodes.
  [[nodiscard]] double ds() const { return dt_ * frame_.arc_length_per_param(); }
  [[nodiscard]] double param(int j) const { return frame_.param_begin() + j * dt_; }
  [[nodiscard]] std::vector<double> params() const;

  /// Samples a function of the segment parameter at every node.
  [[nodiscard]] std::vector<double> sample(
      const std::function<double(double)>& f) const;

 private:
  CurvilinearFrame frame_;
  int n_ = 0;
  double dt_ = 0.0;
};

/// Values sampled at the nodes of a BoundaryGrid.
using BoundaryField = std::vector<double>;

/// The image of the boundary point with parameter t under the normal offset
/// x -> x + eps*h(t)*n(t) on the domain's perturbed segment.
///
/// Throws GeometryError when eps * max|h*kappa| >= 1 (the offset map would
/// fold). perturbed_point(dom, h, 0.0, t) is exactly the reference point.
Point perturbed_point(const ReferenceDomain& domain, const BoundaryProfile& h,
                      double eps, double t);

/// Jacobian determinant of the normal-offset map at offset t from the point
/// with parameter s: 1 + t*kappa(s) in two dimensions. Throws GeometryError
/// when |t*kappa| >= 1.
double layer_jacobian(const CurvilinearFrame& frame, double s, double t);

/// Signed curvature of a boundary segment at parameter t (outward-normal
/// convention). Edge interiors return 0; corner queries throw GeometryError.
double curvature(const ReferenceDomain& domain, SegmentId segment, double t);

/// The frame of the named segment of a domain.
CurvilinearFrame segment_frame(const ReferenceDomain& domain,
                               SegmentId segment);

}  // namespace bpx
