// SPDX-License-Identifier: MIT
#pragma once

/// @file grid_field.hpp
/// @brief Discrete carrier of every expansion term: uniform tensor grids on
///        intervals, rectangles, radii, and polar disks/annuli, with trace
///        accessors and one-sided normal-derivative extraction.
///
/// Two-region (transmission) fields duplicate the interface node so the
/// stored values may jump across it; the interface always coincides with a
/// grid node.

#include <functional>
#include <optional>
#include <vector>

#include "bpx/errors.hpp"
#include "bpx/geometry.hpp"
#include "bpx/stencils.hpp"

namespace bpx {

enum class GridKind { Interval, Rectangle, Radial, Polar };

/// Side of an interface (minus = enclosed/interior region).
enum class Side { Minus, Plus };

class GridField {
 public:
  // -- constructors ---------------------------------------------------------
  static GridField interval(double a, double b, int n_nodes);
  /// Interval with a duplicated interface node: region minus holds
  /// n_minus nodes on [a, x_if], region plus n_plus nodes on [x_if, b].
  static GridField interval_two_region(double a, double x_if, double b,
                                       int n_minus, int n_plus);
  static GridField radial(double r0, double r1, int n_nodes);
  /// Disk with interface: minus on [0, r_if] (n_minus nodes), plus on
  /// [r_if, r1] (n_plus nodes), interface node duplicated.
  static GridField radial_two_region(double r_if, double r1, int n_minus,
                                     int n_plus);
  static GridField rectangle(double length_x, double length_y, int nx, int ny);
  /// Disk polar grid: (nr+1) rings r_i = i*dr times ntheta angles (periodic);
  /// index = ring * ntheta + angle. The r=0 ring stores ntheta equal values.
  static GridField polar(double radius, int nr, int ntheta);

  // -- layout ---------------------------------------------------------------
  [[nodiscard]] GridKind kind() const { return kind_; }
  [[nodiscard]] int size() const { return static_cast<int>(values_.size()); }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] std::vector<double>& values() { return values_; }
  [[nodiscard]] double operator[](int i) const {
    return values_[static_cast<std::size_t>(i)];
  }
  [[nodiscard]] double& operator[](int i) {
    return values_[static_cast<std::size_t>(i)];
  }

  [[nodiscard]] bool two_region() const { return n_minus_ > 0; }
  [[nodiscard]] int n_minus() const { return n_minus_; }
  [[nodiscard]] double interface_pos() const;

  // 1D coordinates (Interval/Radial); for two-region fields i runs over the
  // concatenated layout [minus nodes | plus nodes].
  [[nodiscard]] double coord1d(int i) const;
  [[nodiscard]] double dx_minus() const { return dx0_; }
  [[nodiscard]] double dx_plus() const { return dx1_; }
  [[nodiscard]] double dx() const;

  // Rectangle layout (index = i + j*(nx+1)).
  [[nodiscard]] int nx() const { return nx_; }
  [[nodiscard]] int ny() const { return ny_; }
  [[nodiscard]] double length_x() const { return x1_; }
  [[nodiscard]] double length_y() const { return y1_; }
  [[nodiscard]] double at(int i, int j) const;
  [[nodiscard]] double& at(int i, int j);
  [[nodiscard]] Point node(int i, int j) const;

  // Polar layout (index = ring*ntheta + angle).
  [[nodiscard]] int nr() const { return nx_; }
  [[nodiscard]] int ntheta() const { return ny_; }
  [[nodiscard]] double radius() const { return x1_; }
  [[nodiscard]] double at_polar(int ring, int angle) const;
  [[nodiscard]] double& at_polar(int ring, int angle);

  /// Physical location of flat node index i.
  [[nodiscard]] Point location(int i) const;

  // -- algebra --------------------------------------------------------------
  /// this += s * other (identical layouts required; GridError otherwise).
  void axpy(double s, const GridField& other);
  void fill(double v);
  [[nodiscard]] GridField like_zero() const;

  // -- traces ---------------------------------------------------------------
  /// Values on a boundary segment, one entry per node of the segment's
  /// natural grid (rect edge: ny+1 nodes; circle: ntheta nodes; interval
  /// endpoint / radial circle: 1 node).
  [[nodiscard]] BoundaryField trace(SegmentId segment) const;

  /// Outward normal derivative on a boundary segment extracted with a
  /// one-sided stencil of accuracy order p in {2,3,4}.
  [[nodiscard]] BoundaryField normal_derivative(SegmentId segment,
                                                int order = 3) const;

  /// Interface value of a two-region field, from the given side.
  [[nodiscard]] double interface_value(Side side) const;
  /// One-sided interface derivative d/dx (or d/dr), from the given side,
  /// oriented along +x/+r (out of the minus region).
  [[nodiscard]] double interface_derivative(Side side, int order = 3) const;

  // -- quadrature -----------------------------------------------------------
  /// Weight of node i for integration over the domain (trapezoid in each
  /// direction; radial and polar weights include the area element r).
  [[nodiscard]] double quad_weight(int i) const;

 private:
  GridField() = default;
  GridKind kind_ = GridKind::Interval;
  std::vector<double> values_;
  // Interval/Radial: [x0_, x1_] with optional two-region split at if_pos_.
  double x0_ = 0.0, x1_ = 1.0, y1_ = 0.0;
  double dx0_ = 0.0, dx1_ = 0.0, dy_ = 0.0;
  int n_ = 0;         // 1D node count (total, both regions)
  int n_minus_ = 0;   // two-region: nodes in the minus region
  double if_pos_ = 0.0;
  int nx_ = 0, ny_ = 0;  // rectangle: cells per direction; polar: nr_, ntheta_
};

namespace fourier {

/// Real Fourier modes on a uniform periodic angular grid.
struct Modes {
  int max_k = 0;
  std::vector<double> cos_coeff;  ///< index k = 0..max_k
  std::vector<double> sin_coeff;  ///< index k = 0..max_k (entry 0 unused)
  [[nodiscard]] double eval(double theta) const;
};

/// Trapezoid projection of samples on the uniform periodic grid onto modes
/// k <= max_k (exact for band-limited data when max_k <= n/2 - 1).
Modes project(const std::vector<double>& samples, int max_k);

}  // namespace fourier

}  // namespace bpx
