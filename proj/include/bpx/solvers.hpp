// SPDX-License-Identifier: MIT
#pragma once

/// @file solvers.hpp
/// @brief Finite-difference solution of validated problem specs: interval,
///        rectangle, and radial/polar-mode problems, including transmission
///        jumps at grid-aligned interfaces and pinned pure-Neumann problems.
///
/// All schemes are second-order three/five-point discretizations; Robin and
/// Neumann conditions close with second-order ghost nodes, so solutions that
/// are (piecewise) quadratic are reproduced exactly.

#include "bpx/bvp.hpp"
#include "bpx/grid_field.hpp"

namespace bpx {

/// Solves a 1D spec on n_nodes uniform nodes. A piecewise spec (operator
/// split + interval_interface) is solved with a duplicated interface node and
/// one-sided flux matching; each region then receives n_nodes nodes.
GridField solve_interval(const BvpSpec& spec, int n_nodes);

/// Solves a rectangle spec with the 5-point scheme on (nx+1) x (ny+1) nodes;
/// the sparse system is factorized directly. Diffusion must be isotropic
/// (a_xy = 0); advection uses centered differences.
GridField solve_rectangle(const BvpSpec& spec, int nx, int ny);

/// Solves a radially symmetric spec (disk or annulus) as the ODE
/// -(1/r)(r sigma u')' + c u = f with the regularity closure u'(0) = 0 at the
/// origin. A DiskWithInterface spec is solved two-region with the sampled
/// value/flux jumps; each region then receives n_nodes nodes.
GridField solve_radial(const BvpSpec& spec, int n_nodes);

/// Angular-mode variant of solve_radial: solves
/// -(1/r)(r sigma u')' + sigma k^2 u / r^2 + c u = f for the amplitude of the
/// k-th angular mode (k >= 1 pins u(0) = 0 on disks). Boundary and jump data
/// arrays are read as mode amplitudes (single entries).
GridField solve_radial_mode(const BvpSpec& spec, int k, int n_nodes);

/// Solves a disk spec whose Dirichlet circle data is sampled on the uniform
/// angular grid (ntheta entries, size 1 = constant) by projecting the data
/// onto Fourier modes k <= max_mode and solving one radial problem per mode;
/// the modes are assembled on the matching polar grid (nr rings). The rhs
/// must be radially symmetric (it feeds mode 0 only); UnsupportedError
/// otherwise. Exact-zero mode amplitudes are skipped, so band-limited data
/// costs only its active modes.
GridField solve_disk_by_modes(const BvpSpec& spec, int nr, int ntheta,
                              int max_mode);

/// Solves a pure-Neumann spec (interval, or disk via the radial reduction)
/// whose conditions are NeumannWithCompatibility: checks the divergence
/// compatibility residual (CompatibilityError if >= 1e-8), solves with one
/// pinned node, then shifts by the constant that matches the pin functional
/// sum_j pin_weight_j * u_j * (ds or counting measure) = compat_value.
GridField solve_pinned_neumann(const BvpSpec& spec, int n_nodes);

/// Compatibility residual |int_D f + sum_segments int sigma g ds| of a
/// pure-Neumann spec, by the same quadratures solve_pinned_neumann uses.
double neumann_compatibility_residual(const BvpSpec& spec, int n_nodes);

namespace detail {
/// Thomas algorithm for tridiagonal systems (in place, no pivoting);
/// SolverError on a vanishing pivot. diag/rhs are overwritten.
std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs);
}  // namespace detail

}  // namespace bpx
