// SPDX-License-Identifier: MIT
#pragma once

/// @file stencils.hpp
/// @brief Finite-difference stencils for tangential derivatives along
///        boundary grids and one-sided normal-derivative extraction.
///
/// Closed curves use fourth-order centered periodic differences; open edges
/// use second-order centered differences with one-sided closures at the two
/// ends. One-sided first-derivative weights of orders 2..4 serve the normal
/// direction (trace extraction from volume grids).

#include <vector>

#include "bpx/errors.hpp"

namespace bpx::stencil {

/// First tangential derivative on a closed curve, 4th-order centered.
std::vector<double> d1_periodic4(const std::vector<double>& f, double ds);

/// Second tangential derivative on a closed curve, 4th-order centered.
std::vector<double> d2_periodic4(const std::vector<double>& f, double ds);

/// First tangential derivative on an open edge: 2nd-order centered inside,
/// one-sided 2nd-order at the two ends.
std::vector<double> d1_edge2(const std::vector<double>& f, double ds);

/// Second tangential derivative on an open edge: 2nd-order centered inside,
/// one-sided closures at the two ends.
std::vector<double> d2_edge2(const std::vector<double>& f, double ds);

/// Weights of the one-sided first derivative at the first of the supplied
/// nodes, u'(x_0) ~ sum_i w_i u(x_0 + i*dx) / dx, for accuracy order
/// p in {2, 3, 4} (p+1 points). Throws UnsupportedError otherwise.
const std::vector<double>& one_sided_d1_weights(int order);

}  // namespace bpx::stencil
