// SPDX-License-Identifier: MIT
#pragma once

/// @file ilw.hpp
/// @brief Reduction of high-order normal derivatives on a boundary to
///        tangential data and first-order normal data, using the governing
///        equation's trace (inverse Lax-Wendroff style).
///
/// For a field w with L w = phi near the boundary, the second and third
/// normal derivatives on the boundary are expressible through w's trace, its
/// first normal derivative, and tangential derivatives of both. These
/// operators feed every expansion hierarchy: they are what turns the formal
/// high-order boundary data into computable quantities.

#include "bpx/geometry.hpp"
#include "bpx/stencils.hpp"

namespace bpx {

/// Traces on one boundary segment needed by the reducers. Fields are sampled
/// on the nodes of `grid`; size-1 fields broadcast as constants; an empty
/// field means zero -- except dn_phi, whose absence is an error for k = 3
/// (DataError), since the third-order reduction genuinely needs it.
struct ReducerContext {
  BoundaryGrid grid;
  BoundaryField sigma;     ///< diffusion trace, > 0
  BoundaryField c;         ///< reaction trace (constants for rectangle edges)
  BoundaryField dn_sigma;  ///< normal derivative of sigma
  BoundaryField ds_sigma;  ///< tangential derivative of sigma
  BoundaryField advect;    ///< 1D endpoint case: (b - a') trace
  BoundaryField phi;       ///< right-hand-side trace
  BoundaryField dn_phi;    ///< normal derivative of the right-hand side
};

/// d^2/dn^2 on a rectangle edge (constant sigma, c):
///   -phi/sigma + (c/sigma) u - d^2 u/ds^2.
BoundaryField reduce_rect_k2(const ReducerContext& ctx, const BoundaryField& u,
                             const BoundaryField& dnu);

/// d^3/dn^3 on a rectangle edge:
///   (1/sigma) (-sigma d^2(dnu)/ds^2 + c dnu - dn_phi).
BoundaryField reduce_rect_k3(const ReducerContext& ctx, const BoundaryField& u,
                             const BoundaryField& dnu);

/// d^2/dn^2 on a closed curve (variable sigma, no reaction):
///   -phi/sigma - (ds_sigma/sigma) du/ds - (dn_sigma/sigma) dnu
///   - d^2 u/ds^2 - kappa dnu.
BoundaryField reduce_curv_k2(const ReducerContext& ctx, const BoundaryField& u,
                             const BoundaryField& dnu);

/// d^3/dn^3 on a closed curve, constant sigma only (UnsupportedError
/// otherwise):
///   kappa' du/ds + 3 kappa d^2u/ds^2 + (2 kappa^2 - d^2/ds^2) dnu
///   + (kappa phi - dn_phi)/sigma.
BoundaryField reduce_curv_k3(const ReducerContext& ctx, const BoundaryField& u,
                             const BoundaryField& dnu);

/// d^2/dn^2 at an interval endpoint (size-1 traces):
///   (c u - phi)/sigma + (advect/sigma) * n_x * dnu.
BoundaryField reduce_point_k2(const ReducerContext& ctx,
                              const BoundaryField& u,
                              const BoundaryField& dnu);

/// d^3/dn^3 at an interval endpoint (coefficient traces constant near the
/// endpoint): (c dnu - dn_phi)/sigma + n_x (advect/sigma) d^2/dn^2.
BoundaryField reduce_point_k3(const ReducerContext& ctx,
                              const BoundaryField& u,
                              const BoundaryField& dnu);

/// Dispatch on k and the grid's frame kind: k = 2 or 3 to the point, closed
/// curve, or open edge reducer; any other k is UnsupportedError (no general
/// reduction is implemented beyond third order, which caps the expansion
/// hierarchies at order 3).
BoundaryField reduce(const ReducerContext& ctx, int k, const BoundaryField& u,
                     const BoundaryField& dnu);

}  // namespace bpx
