// SPDX-License-Identifier: MIT
#pragma once

/// @file bvp.hpp
/// @brief The language of problems: elliptic operator coefficients,
///        right-hand sides, boundary conditions, and validated problem specs
///        shared by the hierarchy generators and the solvers.
///
/// Operators are in divergence form,
///   L u = -sum_j d/dx_j ( a^{ij} d/dx_i u ) + sum_i b^i d/dx_i u + c u,
/// with a symmetric positive definite and c >= 0.

#include <functional>
#include <optional>
#include <vector>

#include "json.hpp"

#include "bpx/errors.hpp"
#include "bpx/geometry.hpp"

namespace bpx {

/// Symmetric 2x2 coefficient matrix (1D problems use xx only).
struct Matrix2 {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;
};

using ScalarFn = std::function<double(Point)>;
using MatrixFn = std::function<Matrix2(Point)>;

/// Coefficients of one region: a (matrix), b (vector), c (scalar).
struct CoefficientSet {
  MatrixFn a = [](Point) { return Matrix2{}; };
  ScalarFn b1 = [](Point) { return 0.0; };
  ScalarFn b2 = [](Point) { return 0.0; };
  ScalarFn c = [](Point) { return 0.0; };
};

/// The divergence-form elliptic operator; optionally split into an interior
/// and an exterior coefficient set across the domain's interface.
class EllipticOperator {
 public:
  /// -sigma * Laplacian + c with constants.
  static EllipticOperator isotropic(double sigma, double c = 0.0);
  /// -div(sigma(x) grad) + c(x) with scalar fields.
  static EllipticOperator isotropic_fn(ScalarFn sigma, ScalarFn c);
  /// Full coefficient set.
  static EllipticOperator general(CoefficientSet coeffs);
  /// Two-region operator split across the domain interface.
  static EllipticOperator piecewise(EllipticOperator interior,
                                    EllipticOperator exterior);

  [[nodiscard]] bool is_piecewise() const { return piecewise_; }
  [[nodiscard]] const CoefficientSet& coeffs() const;
  [[nodiscard]] const CoefficientSet& interior() const;
  [[nodiscard]] const CoefficientSet& exterior() const;

  /// True when the region's diffusion is a constant multiple of the identity
  /// (recorded by the isotropic factories; drives solver specialization).
  [[nodiscard]] bool isotropic_constant() const { return iso_const_; }
  [[nodiscard]] double sigma_constant() const;
  [[nodiscard]] double sigma_constant_interior() const;
  [[nodiscard]] double sigma_constant_exterior() const;

 private:
  EllipticOperator() = default;
  std::vector<CoefficientSet> sets_;  // 1 entry, or 2 when piecewise
  bool piecewise_ = false;
  bool iso_const_ = false;
  std::vector<double> sigma_const_;  // parallel to sets_ when iso_const_
};

/// What kind of condition a boundary segment carries.
enum class BcKind {
  Dirichlet,                 ///< u = g
  Neumann,                   ///< conormal derivative = g
  Robin,                     ///< alpha*u + beta*dn(u) = g
  NeumannWithCompatibility,  ///< Neumann plus the pin that fixes the constant
  TransmissionJump,          ///< [u] = value_jump, [sigma dn(u)] = flux_jump
};

/// One boundary (or interface) condition with data sampled on the segment
/// grid. Endpoint segments of an interval hold single-entry arrays.
struct BoundaryCondition {
  SegmentId segment = SegmentId::Circle;
  BcKind kind = BcKind::Dirichlet;
  BoundaryField g;            ///< data samples
  BoundaryField alpha, beta;  ///< Robin coefficients (size 1 = constant)
  /// NeumannWithCompatibility: required value of the pin functional
  /// sum_j w_j u_j ds (w sampled in pin_weight; ds from the segment grid;
  /// endpoint segments use the counting measure).
  double compat_value = 0.0;
  BoundaryField pin_weight;
  /// TransmissionJump data.
  BoundaryField value_jump, flux_jump;

  static BoundaryCondition dirichlet(SegmentId seg, BoundaryField g);
  static BoundaryCondition neumann(SegmentId seg, BoundaryField g);
  static BoundaryCondition robin(SegmentId seg, BoundaryField alpha,
                                 BoundaryField beta, BoundaryField g);
  static BoundaryCondition neumann_with_pin(SegmentId seg, BoundaryField g,
                                            BoundaryField pin_weight,
                                            double compat_value);
  static BoundaryCondition transmission(SegmentId seg, BoundaryField value_jump,
                                        BoundaryField flux_jump);
};

/// A complete boundary-value problem on a reference domain.
struct BvpSpec {
  ReferenceDomain domain = ReferenceDomain::interval(0.0, 1.0);
  EllipticOperator op = EllipticOperator::isotropic(1.0);
  ScalarFn rhs = [](Point) { return 0.0; };      ///< single-region f
  ScalarFn rhs_ext;                              ///< exterior f when piecewise
  std::vector<BoundaryCondition> bcs;
  std::optional<BoundaryCondition> interface_conditions;
  /// Interface coordinate for Interval domains carrying a two-region split.
  std::optional<double> interval_interface;
  bool validated = false;

  /// JSON rendering for debugging (sampled coefficient lattice, row-major).
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Verifies every invariant and returns the checked spec:
/// a SPD and c >= 0 on a sample lattice (EllipticityError), every boundary
/// segment covered exactly once (CoverageError), all-Neumann problems carry a
/// pin (CompatibilityMissing), Robin coefficients not both zero, piecewise
/// operators carry interface conditions. Idempotent.
BvpSpec validate(BvpSpec spec);

}  // namespace bpx
