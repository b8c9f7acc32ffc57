// SPDX-License-Identifier: MIT
#pragma once

/// @file hierarchy.hpp
/// @brief Fixed-domain expansion of boundary-perturbed Dirichlet problems:
///        recursive boundary data for the correction terms, term-by-term
///        solves, partial sums, closed Robin-form problems, and the Neumann
///        and cubic-nonlinearity variants.
///
/// The perturbed boundary is { x + eps*h(x)*n(x) : x on the perturbed
/// segment }. Every term u_n is eps-independent and lives on the reference
/// domain; the n-th boundary value trades normal derivatives of lower terms
/// for tangential data through the reducers in ilw.hpp.

#include <functional>
#include <vector>

#include "bpx/bvp.hpp"
#include "bpx/grid_field.hpp"
#include "bpx/ilw.hpp"

namespace bpx {

enum class ExpansionRegime { Smooth, NeumannSmooth, NonlinearSmooth };

/// Boundary traces of one solved term on the perturbed segment's grid.
struct TermTraces {
  BoundaryField value;   ///< u_n restricted to the segment
  BoundaryField normal;  ///< outward normal derivative of u_n
};

/// One expansion term: the solved field, the problem it solves (recomputing
/// from it must reproduce the field bit-identically), and its traces.
struct ExpansionTerm {
  GridField field;
  BvpSpec spec;
  TermTraces traces;
};

/// Ordered terms u_0..u_N of one expansion.
struct ExpansionSeries {
  ExpansionRegime regime = ExpansionRegime::Smooth;
  std::vector<ExpansionTerm> terms;

  /// Pointwise sum_{k<=n} eps^k * terms[k]; partial_sum(n, 0) is u_0 exactly.
  [[nodiscard]] GridField partial_sum(int n, double eps) const;
};

/// Inputs of the smooth-coefficient expansion: one elliptic problem plus the
/// perturbation profile h on domain.perturbed_segment(). Supported domains:
/// interval (right endpoint), rectangle (right edge), disk (circle, solved
/// mode-by-mode with angular resolution ntheta and modes <= max_mode).
///
/// Coefficient and data callables must be evaluable in a neighborhood of the
/// boundary (normal derivatives of sigma and rhs are probed by differencing
/// unless rhs_normal supplies d_n f analytically).
struct SmoothProblem {
  ReferenceDomain domain = ReferenceDomain::interval(0.0, 1.0);
  EllipticOperator op = EllipticOperator::isotropic(1.0);
  ScalarFn rhs = [](Point) { return 0.0; };
  ScalarFn rhs_normal;  ///< d_n f on the perturbed segment; empty = difference
  ScalarFn g = [](Point) { return 0.0; };  ///< Dirichlet data on the boundary
  /// Normal-derivative traces of g on the perturbed segment: g_normal[k-1]
  /// evaluates d_n^k g. Missing entries are zero.
  std::vector<ScalarFn> g_normal;
  BoundaryProfile profile = BoundaryProfile::zero();  ///< h
  int n_nodes = 257;        ///< interval nodes / radial nodes (rings + 1)
  int nx = 64, ny = 64;     ///< rectangle cells
  int ntheta = 64;          ///< disk angular nodes
  int max_mode = 16;        ///< disk Fourier cutoff
};

/// Samples operator and source data on the perturbed segment of the domain
/// so the boundary reducers can run there: sigma, c, their normal and
/// tangential derivatives (central differences), the drift combination
/// b - a' at interval endpoints, and the rhs with its normal derivative
/// (rhs_normal overrides the difference quotient when provided). Throws
/// UnsupportedError for piecewise operators, anisotropic diffusion, drift
/// along edges or curves, or an edge whose diffusion visibly varies.
ReducerContext make_reducer_context(const ReferenceDomain& domain,
                                    const EllipticOperator& op,
                                    const ScalarFn& rhs,
                                    const ScalarFn& rhs_normal, int n_nodes);

/// Dirichlet boundary value of term n on the perturbed segment,
///   (h^n/n!) d_n^n g - h d_n u_{n-1}
///     - sum_{k=2}^n (h^k/k!) F_k[u_{n-k}, d_n u_{n-k}],
/// where F_k carries the volume rhs only at top order k = n (lower terms
/// solve the homogeneous equation). g_traces[k] samples d_n^k g on ctx.grid
/// (missing or short = zero data); lower[m] are the traces of u_m for m < n.
/// Orders n > 3 throw UnsupportedError.
BoundaryField smooth_dirichlet_bc(int n,
                                  const std::vector<BoundaryField>& g_traces,
                                  const BoundaryProfile& profile,
                                  const std::vector<TermTraces>& lower,
                                  const ReducerContext& ctx);

/// Solves the terms u_0..u_max_order: L u_0 = f with u_0 = g on the
/// boundary; L u_n = 0 with smooth_dirichlet_bc data on the perturbed
/// segment and zero data elsewhere. max_order <= 3.
ExpansionSeries compute_terms(const SmoothProblem& problem, int max_order);

/// The single Robin-form problem whose solution absorbs the boundary shift
/// to order eps^n (n in {1, 2}): the boundary condition matches
/// sum_{k<=n} (eps^k h^k / k!) d_n^k of solution and data, with d_n^2
/// eliminated through the reducers for n = 2. At eps = 0 this is the u_0
/// problem. n = 2 is available on the interval, where the elimination stays
/// Robin-form; elsewhere it would carry tangential derivatives of the
/// unknown and UnsupportedError is thrown. n > 2 throws UnsupportedError.
BvpSpec closed_problem(int n, const SmoothProblem& problem, double eps);

/// Neumann data of term m on the perturbed right edge of a rectangle (the
/// boundary condition of the perturbed problem is d_n u = 0 on the moving
/// edge):
///   m = 0:  0
///   m = 1:  h' d_s w_0 - h F_2[w_0]
///   m = 2:  h' d_s w_1 + h h' d_s(d_n w_0) - h F_2[w_1] - (h^2/2) F_3[w_0]
/// with F_k carrying the volume rhs for w_0 only. m > 2 throws
/// UnsupportedError.
BoundaryField neumann_rect_bc(int m, const BoundaryProfile& profile,
                              const std::vector<TermTraces>& lower,
                              const ReducerContext& ctx);

/// Expansion of the rectangle problem with homogeneous Neumann data on the
/// perturbed right edge and Dirichlet data g on the other edges.
/// max_order <= 2.
ExpansionSeries neumann_rect_terms(const SmoothProblem& problem,
                                   int max_order);

/// Direct Newton solve of the cubic model -u'' + u - u^3 = f on (a, b) with
/// zero Dirichlet ends (initial guess 0, residual tolerance 1e-12, at most
/// 50 iterations; SolverError on non-convergence).
GridField solve_cubic_model(const ScalarFn& f, double a, double b,
                            int n_nodes);

/// Right-hand side of the n-th linearized cubic-model equation: the
/// multinomial sum over products u_{k1} u_{k2} u_{k3} with k1+k2+k3 = n and
/// every ki < n (equivalently, the eps^n coefficient of the cubed truncated
/// series). lower holds u_0..u_{n-1}.
GridField nonlinear_rhs(const std::vector<GridField>& lower, int n);

/// Expansion of -u'' + u - u^3 = f on the interval with zero Dirichlet data
/// on the perturbed problem: u_0 by Newton iteration, u_n (n >= 1) solving
/// the linearized equation -u'' + (1 - 3 u_0^2) u = RHS_n with recursive
/// boundary data. Interval domains only; max_order <= 3. The linearized
/// reaction 1 - 3 u_0^2 must stay nonnegative (EllipticityError otherwise).
ExpansionSeries nonlinear_hierarchy(const SmoothProblem& problem,
                                    int max_order);

}  // namespace bpx
