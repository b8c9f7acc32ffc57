// SPDX-License-Identifier: MIT

/// @file solvers.cpp
/// @brief Second-order finite-difference solvers for interval, rectangle,
///        radial and angular-mode problems, with ghost-node Robin closures,
///        duplicated-node transmission interfaces, and pinned pure-Neumann
///        solves.

#include "bpx/solvers.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <vector>

namespace bpx {

namespace {

double bc_entry(const BoundaryField& f, int j) {
  if (f.empty()) return 0.0;
  return f.size() == 1 ? f[0] : f.at(static_cast<std::size_t>(j));
}

const BoundaryCondition* find_bc(const BvpSpec& spec, SegmentId seg) {
  for (const auto& bc : spec.bcs)
    if (bc.segment == seg) return &bc;
  return nullptr;
}

const BoundaryCondition& require_bc(const BvpSpec& spec, SegmentId seg) {
  const BoundaryCondition* bc = find_bc(spec, seg);
  if (!bc) throw CoverageError("missing boundary condition for segment");
  return *bc;
}

void require_validated(const BvpSpec& spec) {
  if (!spec.validated)
    throw SolverError("spec must pass validate() before solving");
}

/// Fold a ghost-node contribution into the row. The ghost relation is
/// u_ghost = u_mirror + (2*h/beta)*(g - alpha*u_node) on every side (the
/// normal direction and the ghost offset flip together).
struct GhostFold {
  double mirror;  // add to the mirror node's coefficient
  double diag;    // add to the node's own coefficient
  double rhs;     // add to the right-hand side
};

GhostFold fold_ghost(double ghost_coeff, double h, double alpha, double beta,
                     double g) {
  if (beta == 0.0)
    throw SolverError("ghost closure needs a nonzero normal coefficient");
  return {ghost_coeff, -ghost_coeff * 2.0 * h * alpha / beta,
          -ghost_coeff * 2.0 * h * g / beta};
}

struct RobinData {
  double alpha = 0.0, beta = 0.0, g = 0.0;
  bool dirichlet = false;
};

RobinData end_condition(const BoundaryCondition& bc, int j) {
  RobinData r;
  switch (bc.kind) {
    case BcKind::Dirichlet:
      r.dirichlet = true;
      r.g = bc_entry(bc.g, j);
      return r;
    case BcKind::Neumann:
    case BcKind::NeumannWithCompatibility:
      r.alpha = 0.0;
      r.beta = 1.0;
      r.g = bc_entry(bc.g, j);
      return r;
    case BcKind::Robin:
      r.alpha = bc_entry(bc.alpha, j);
      r.beta = bc_entry(bc.beta, j);
      r.g = bc_entry(bc.g, j);
      if (r.alpha == 0.0 && r.beta == 0.0)
        throw SolverError("Robin condition with zero coefficients");
      if (r.beta == 0.0) {
        r.dirichlet = true;
        r.g = r.g / r.alpha;
      }
      return r;
    case BcKind::TransmissionJump:
      throw SolverError("transmission data is not an end condition");
  }
  throw SolverError("unreachable condition kind");
}

using Trip = Eigen::Triplet<double>;

std::vector<double> sparse_solve(int n, const std::vector<Trip>& trips,
                                 const std::vector<double>& rhs) {
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw SolverError("sparse factorization failed");
  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(
      rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) throw SolverError("sparse solve failed");
  return {x.data(), x.data() + x.size()};
}

}  // namespace

namespace detail {

std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n)
    throw SolverError("tridiagonal bands must have equal length");
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) throw SolverError("zero pivot in tridiagonal solve");
    double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) throw SolverError("zero pivot in tridiagonal solve");
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
  return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Interval
// ---------------------------------------------------------------------------

namespace {

/// Assembles the three-point row of -(a u')' + b u' + c u = f at an interior
/// node into (lower, diag, upper).
struct Row1d {
  double lo, di, up, rhs;
};

Row1d interior_row_1d(const CoefficientSet& cs, const ScalarFn& f, double x,
                      double dx) {
  double Am = cs.a({x - 0.5 * dx, 0.0}).xx;
  double Ap = cs.a({x + 0.5 * dx, 0.0}).xx;
  double b = cs.b1({x, 0.0});
  double c = cs.c({x, 0.0});
  double dx2 = dx * dx;
  return {-Am / dx2 - b / (2.0 * dx), (Am + Ap) / dx2 + c,
          -Ap / dx2 + b / (2.0 * dx), f({x, 0.0})};
}

GridField solve_interval_single(const BvpSpec& spec, int n) {
  const double a = spec.domain.a(), b = spec.domain.b();
  GridField u = GridField::interval(a, b, n);
  const double dx = u.dx();
  const CoefficientSet& cs = spec.op.coeffs();

  std::vector<double> lo(static_cast<std::size_t>(n), 0.0), di = lo, up = lo,
                      rhs = lo;
  for (int i = 1; i + 1 < n; ++i) {
    Row1d r = interior_row_1d(cs, spec.rhs, u.coord1d(i), dx);
    lo[static_cast<std::size_t>(i)] = r.lo;
    di[static_cast<std::size_t>(i)] = r.di;
    up[static_cast<std::size_t>(i)] = r.up;
    rhs[static_cast<std::size_t>(i)] = r.rhs;
  }

  auto apply_end = [&](bool left) {
    const int i = left ? 0 : n - 1;
    RobinData rd = end_condition(
        require_bc(spec, left ? SegmentId::IntervalLeft
                              : SegmentId::IntervalRight),
        0);
    if (rd.dirichlet) {
      di[static_cast<std::size_t>(i)] = 1.0;
      rhs[static_cast<std::size_t>(i)] = rd.g;
      return;
    }
    Row1d r = interior_row_1d(cs, spec.rhs, u.coord1d(i), dx);
    double ghost_coeff = left ? r.lo : r.up;
    double mirror_coeff = left ? r.up : r.lo;
    GhostFold gf = fold_ghost(ghost_coeff, dx, rd.alpha, rd.beta, rd.g);
    if (left) {
      di[0] = r.di + gf.diag;
      up[0] = mirror_coeff + gf.mirror;
      rhs[0] = r.rhs + gf.rhs;
    } else {
      di[static_cast<std::size_t>(i)] = r.di + gf.diag;
      lo[static_cast<std::size_t>(i)] = mirror_coeff + gf.mirror;
      rhs[static_cast<std::size_t>(i)] = r.rhs + gf.rhs;
    }
  };
  apply_end(true);
  apply_end(false);

  u.values() = detail::solve_tridiagonal(lo, di, up, rhs);
  return u;
}

GridField solve_interval_two_region(const BvpSpec& spec, int n_per_region) {
  if (!spec.interval_interface)
    throw SolverError("piecewise interval spec lacks an interface position");
  if (!spec.interface_conditions)
    throw SolverError("piecewise spec lacks interface conditions");
  const double a = spec.domain.a(), b = spec.domain.b();
  const double xi = *spec.interval_interface;
  const int nm = n_per_region, np = n_per_region;
  GridField u = GridField::interval_two_region(a, xi, b, nm, np);
  const double dxm = u.dx_minus(), dxp = u.dx_plus();
  const CoefficientSet& ci = spec.op.interior();
  const CoefficientSet& ce = spec.op.exterior();
  const ScalarFn& fi = spec.rhs;
  const ScalarFn fe = spec.rhs_ext ? spec.rhs_ext : spec.rhs;
  const int n = nm + np;

  std::vector<Trip> trips;
  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
  auto add = [&](int r, int c, double v) { trips.emplace_back(r, c, v); };

  // Left end (minus region).
  {
    RobinData rd = end_condition(require_bc(spec, SegmentId::IntervalLeft), 0);
    if (rd.dirichlet) {
      add(0, 0, 1.0);
      rhs[0] = rd.g;
    } else {
      Row1d r = interior_row_1d(ci, fi, u.coord1d(0), dxm);
      GhostFold gf = fold_ghost(r.lo, dxm, rd.alpha, rd.beta, rd.g);
      add(0, 0, r.di + gf.diag);
      add(0, 1, r.up + gf.mirror);
      rhs[0] = r.rhs + gf.rhs;
    }
  }
  for (int i = 1; i < nm - 1; ++i) {
    Row1d r = interior_row_1d(ci, fi, u.coord1d(i), dxm);
    add(i, i - 1, r.lo);
    add(i, i, r.di);
    add(i, i + 1, r.up);
    rhs[static_cast<std::size_t>(i)] = r.rhs;
  }
  // Interface rows: value jump at the minus-side node, flux jump at the
  // plus-side node, both with second-order one-sided derivatives.
  {
    const int im = nm - 1, ip = nm;
    add(im, ip, 1.0);
    add(im, im, -1.0);
    rhs[static_cast<std::size_t>(im)] =
        bc_entry(spec.interface_conditions->value_jump, 0);

    double si = ci.a({xi, 0.0}).xx;
    double se = ce.a({xi, 0.0}).xx;
    // sigma_plus * u'(xi+) - sigma_minus * u'(xi-) = flux_jump
    add(ip, ip, se * (-3.0) / (2.0 * dxp));
    add(ip, ip + 1, se * 4.0 / (2.0 * dxp));
    add(ip, ip + 2, se * (-1.0) / (2.0 * dxp));
    add(ip, im, -si * 3.0 / (2.0 * dxm));
    add(ip, im - 1, si * 4.0 / (2.0 * dxm));
    add(ip, im - 2, -si * 1.0 / (2.0 * dxm));
    rhs[static_cast<std::size_t>(ip)] =
        bc_entry(spec.interface_conditions->flux_jump, 0);
  }
  for (int i = nm + 1; i < n - 1; ++i) {
    Row1d r = interior_row_1d(ce, fe, u.coord1d(i), dxp);
    add(i, i - 1, r.lo);
    add(i, i, r.di);
    add(i, i + 1, r.up);
    rhs[static_cast<std::size_t>(i)] = r.rhs;
  }
  // Right end (plus region).
  {
    const int i = n - 1;
    RobinData rd = end_condition(require_bc(spec, SegmentId::IntervalRight), 0);
    if (rd.dirichlet) {
      add(i, i, 1.0);
      rhs[static_cast<std::size_t>(i)] = rd.g;
    } else {
      Row1d r = interior_row_1d(ce, fe, u.coord1d(i), dxp);
      GhostFold gf = fold_ghost(r.up, dxp, rd.alpha, rd.beta, rd.g);
      add(i, i, r.di + gf.diag);
      add(i, i - 1, r.lo + gf.mirror);
      rhs[static_cast<std::size_t>(i)] = r.rhs + gf.rhs;
    }
  }

  u.values() = sparse_solve(n, trips, rhs);
  return u;
}

}  // namespace

GridField solve_interval(const BvpSpec& spec, int n_nodes) {
  require_validated(spec);
  if (spec.domain.kind() != DomainKind::Interval)
    throw SolverError("solve_interval needs an interval domain");
  if (spec.op.is_piecewise()) return solve_interval_two_region(spec, n_nodes);
  return solve_interval_single(spec, n_nodes);
}

// ---------------------------------------------------------------------------
// Rectangle
// ---------------------------------------------------------------------------

GridField solve_rectangle(const BvpSpec& spec, int nx, int ny) {
  require_validated(spec);
  if (spec.domain.kind() != DomainKind::Rectangle)
    throw SolverError("solve_rectangle needs a rectangle domain");
  if (spec.op.is_piecewise())
    throw UnsupportedError("rectangle solves are single-region");
  const CoefficientSet& cs = spec.op.coeffs();
  GridField u = GridField::rectangle(spec.domain.length_x(),
                                     spec.domain.length_y(), nx, ny);
  const double dx = spec.domain.length_x() / nx;
  const double dy = spec.domain.length_y() / ny;
  const int n = (nx + 1) * (ny + 1);
  auto idx = [&](int i, int j) { return i + j * (nx + 1); };

  // Dirichlet assignment wins at corners; fixed edge order keeps it
  // deterministic.
  const SegmentId edges[4] = {SegmentId::RectLeft, SegmentId::RectRight,
                              SegmentId::RectBottom, SegmentId::RectTop};
  std::vector<char> dirichlet(static_cast<std::size_t>(n), 0);
  std::vector<double> dir_val(static_cast<std::size_t>(n), 0.0);
  for (SegmentId seg : edges) {
    const BoundaryCondition& bc = require_bc(spec, seg);
    if (bc.kind != BcKind::Dirichlet) continue;
    auto set = [&](int i, int j, int k) {
      dirichlet[static_cast<std::size_t>(idx(i, j))] = 1;
      dir_val[static_cast<std::size_t>(idx(i, j))] = bc_entry(bc.g, k);
    };
    if (seg == SegmentId::RectLeft)
      for (int j = 0; j <= ny; ++j) set(0, j, j);
    if (seg == SegmentId::RectRight)
      for (int j = 0; j <= ny; ++j) set(nx, j, j);
    if (seg == SegmentId::RectBottom)
      for (int i = 0; i <= nx; ++i) set(i, 0, i);
    if (seg == SegmentId::RectTop)
      for (int i = 0; i <= nx; ++i) set(i, ny, i);
  }

  std::vector<Trip> trips;
  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
  trips.reserve(static_cast<std::size_t>(5 * n));

  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const int row = idx(i, j);
      if (dirichlet[static_cast<std::size_t>(row)]) {
        trips.emplace_back(row, row, 1.0);
        rhs[static_cast<std::size_t>(row)] =
            dir_val[static_cast<std::size_t>(row)];
        continue;
      }
      const Point p{i * dx, j * dy};
      const Matrix2 a_c = cs.a(p);
      if (a_c.xy != 0.0)
        throw UnsupportedError(
            "the 5-point scheme needs a diagonal diffusion matrix");
      const double Axm = cs.a({p.x - 0.5 * dx, p.y}).xx;
      const double Axp = cs.a({p.x + 0.5 * dx, p.y}).xx;
      const double Aym = cs.a({p.x, p.y - 0.5 * dy}).yy;
      const double Ayp = cs.a({p.x, p.y + 0.5 * dy}).yy;
      const double b1 = cs.b1(p), b2 = cs.b2(p), c = cs.c(p);
      const double TW = -Axm / (dx * dx) - b1 / (2.0 * dx);
      const double TE = -Axp / (dx * dx) + b1 / (2.0 * dx);
      const double TS = -Aym / (dy * dy) - b2 / (2.0 * dy);
      const double TN = -Ayp / (dy * dy) + b2 / (2.0 * dy);
      double diag = (Axm + Axp) / (dx * dx) + (Aym + Ayp) / (dy * dy) + c;
      double rv = spec.rhs(p);

      auto neighbor = [&](int ii, int jj, double coeff, bool x_dir,
                          bool high_side) {
        if (ii >= 0 && ii <= nx && jj >= 0 && jj <= ny) {
          trips.emplace_back(row, idx(ii, jj), coeff);
          return;
        }
        // Ghost node: fold through the edge condition.
        SegmentId seg = x_dir ? (high_side ? SegmentId::RectRight
                                           : SegmentId::RectLeft)
                              : (high_side ? SegmentId::RectTop
                                           : SegmentId::RectBottom);
        const BoundaryCondition& bc = require_bc(spec, seg);
        int k = x_dir ? j : i;
        RobinData rd = end_condition(bc, k);
        if (rd.dirichlet)
          throw SolverError("ghost fold reached a Dirichlet edge");
        GhostFold gf =
            fold_ghost(coeff, x_dir ? dx : dy, rd.alpha, rd.beta, rd.g);
        int mi = x_dir ? (high_side ? nx - 1 : 1) : i;
        int mj = x_dir ? j : (high_side ? ny - 1 : 1);
        trips.emplace_back(row, idx(mi, mj), gf.mirror);
        diag += gf.diag;
        rv += gf.rhs;
      };
      neighbor(i - 1, j, TW, true, false);
      neighbor(i + 1, j, TE, true, true);
      neighbor(i, j - 1, TS, false, false);
      neighbor(i, j + 1, TN, false, true);
      trips.emplace_back(row, row, diag);
      rhs[static_cast<std::size_t>(row)] = rv;
    }
  }

  u.values() = sparse_solve(n, trips, rhs);
  return u;
}

// ---------------------------------------------------------------------------
// Radial / angular modes
// ---------------------------------------------------------------------------

namespace {

double sigma_at(const CoefficientSet& cs, double r) {
  Matrix2 a = cs.a({r, 0.0});
  return a.xx;
}

void require_radial_isotropic(const CoefficientSet& cs, double r0, double r1) {
  for (int i = 0; i <= 8; ++i) {
    double r = r0 + (r1 - r0) * i / 8.0;
    Matrix2 a = cs.a({r, 0.0});
    if (a.xy != 0.0 || a.xx != a.yy)
      throw UnsupportedError("radial solves need isotropic diffusion");
    if (cs.b1({r, 0.0}) != 0.0 || cs.b2({r, 0.0}) != 0.0)
      throw UnsupportedError("radial solves carry no advection");
  }
}

/// Interior row of -(1/r)(r sigma u')' + (sigma k^2/r^2 + c) u = f.
Row1d radial_interior_row(const CoefficientSet& cs, const ScalarFn& f, int k,
                          double r, double dr) {
  double rm = r - 0.5 * dr, rp = r + 0.5 * dr;
  double Am = rm * sigma_at(cs, rm) / r;
  double Ap = rp * sigma_at(cs, rp) / r;
  double extra = cs.c({r, 0.0});
  if (k > 0) extra += sigma_at(cs, r) * k * k / (r * r);
  double dr2 = dr * dr;
  return {-Am / dr2, (Am + Ap) / dr2 + extra, -Ap / dr2, f({r, 0.0})};
}

GridField solve_radial_single(const BvpSpec& spec, int k, int n) {
  const bool disk = spec.domain.kind() == DomainKind::Disk;
  const double r0 = disk ? 0.0 : spec.domain.inner_radius();
  const double r1 = spec.domain.radius();
  const CoefficientSet& cs = spec.op.coeffs();
  require_radial_isotropic(cs, r0, r1);
  GridField u = GridField::radial(r0, r1, n);
  const double dr = u.dx();

  std::vector<double> lo(static_cast<std::size_t>(n), 0.0), di = lo, up = lo,
                      rhs = lo;
  for (int i = 1; i + 1 < n; ++i) {
    Row1d r = radial_interior_row(cs, spec.rhs, k, u.coord1d(i), dr);
    lo[static_cast<std::size_t>(i)] = r.lo;
    di[static_cast<std::size_t>(i)] = r.di;
    up[static_cast<std::size_t>(i)] = r.up;
    rhs[static_cast<std::size_t>(i)] = r.rhs;
  }

  if (disk) {
    // Origin closure: modes k >= 1 vanish at r = 0; the symmetric mode obeys
    // the regularity limit -(sigma) * 4 (u_1 - u_0)/dr^2 + c u_0 = f(0).
    if (k > 0) {
      di[0] = 1.0;
      rhs[0] = 0.0;
    } else {
      double s0 = sigma_at(cs, 0.0);
      di[0] = 4.0 * s0 / (dr * dr) + cs.c({0.0, 0.0});
      up[0] = -4.0 * s0 / (dr * dr);
      rhs[0] = spec.rhs({0.0, 0.0});
    }
  } else {
    RobinData rd = end_condition(require_bc(spec, SegmentId::AnnulusInner), 0);
    if (rd.dirichlet) {
      di[0] = 1.0;
      rhs[0] = rd.g;
    } else {
      Row1d r = radial_interior_row(cs, spec.rhs, k, r0, dr);
      GhostFold gf = fold_ghost(r.lo, dr, rd.alpha, rd.beta, rd.g);
      di[0] = r.di + gf.diag;
      up[0] = r.up + gf.mirror;
      rhs[0] = r.rhs + gf.rhs;
    }
  }

  {
    SegmentId outer = disk ? SegmentId::Circle : SegmentId::AnnulusOuter;
    RobinData rd = end_condition(require_bc(spec, outer), 0);
    const int i = n - 1;
    if (rd.dirichlet) {
      di[static_cast<std::size_t>(i)] = 1.0;
      rhs[static_cast<std::size_t>(i)] = rd.g;
    } else {
      Row1d r = radial_interior_row(cs, spec.rhs, k, r1, dr);
      GhostFold gf = fold_ghost(r.up, dr, rd.alpha, rd.beta, rd.g);
      di[static_cast<std::size_t>(i)] = r.di + gf.diag;
      lo[static_cast<std::size_t>(i)] = r.lo + gf.mirror;
      rhs[static_cast<std::size_t>(i)] = r.rhs + gf.rhs;
    }
  }

  u.values() = detail::solve_tridiagonal(lo, di, up, rhs);
  return u;
}

GridField solve_radial_interface(const BvpSpec& spec, int k,
                                 int n_per_region) {
  if (!spec.interface_conditions)
    throw SolverError("piecewise spec lacks interface conditions");
  const double ri = spec.domain.interface_radius();
  const double r1 = spec.domain.radius();
  const CoefficientSet& ci = spec.op.interior();
  const CoefficientSet& ce = spec.op.exterior();
  require_radial_isotropic(ci, 0.0, ri);
  require_radial_isotropic(ce, ri, r1);
  const ScalarFn& fi = spec.rhs;
  const ScalarFn fe = spec.rhs_ext ? spec.rhs_ext : spec.rhs;

  const int nm = n_per_region, np = n_per_region;
  GridField u = GridField::radial_two_region(ri, r1, nm, np);
  const double drm = u.dx_minus(), drp = u.dx_plus();
  const int n = nm + np;
  std::vector<Trip> trips;
  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
  auto add = [&](int r, int c, double v) { trips.emplace_back(r, c, v); };

  // Origin row.
  if (k > 0) {
    add(0, 0, 1.0);
  } else {
    double s0 = sigma_at(ci, 0.0);
    add(0, 0, 4.0 * s0 / (drm * drm) + ci.c({0.0, 0.0}));
    add(0, 1, -4.0 * s0 / (drm * drm));
    rhs[0] = fi({0.0, 0.0});
  }
  for (int i = 1; i < nm - 1; ++i) {
    Row1d r = radial_interior_row(ci, fi, k, u.coord1d(i), drm);
    add(i, i - 1, r.lo);
    add(i, i, r.di);
    add(i, i + 1, r.up);
    rhs[static_cast<std::size_t>(i)] = r.rhs;
  }
  {
    const int im = nm - 1, ip = nm;
    add(im, ip, 1.0);
    add(im, im, -1.0);
    rhs[static_cast<std::size_t>(im)] =
        bc_entry(spec.interface_conditions->value_jump, 0);
    double si = sigma_at(ci, ri), se = sigma_at(ce, ri);
    add(ip, ip, se * (-3.0) / (2.0 * drp));
    add(ip, ip + 1, se * 4.0 / (2.0 * drp));
    add(ip, ip + 2, se * (-1.0) / (2.0 * drp));
    add(ip, im, -si * 3.0 / (2.0 * drm));
    add(ip, im - 1, si * 4.0 / (2.0 * drm));
    add(ip, im - 2, -si * 1.0 / (2.0 * drm));
    rhs[static_cast<std::size_t>(ip)] =
        bc_entry(spec.interface_conditions->flux_jump, 0);
  }
  for (int i = nm + 1; i < n - 1; ++i) {
    Row1d r = radial_interior_row(ce, fe, k, u.coord1d(i), drp);
    add(i, i - 1, r.lo);
    add(i, i, r.di);
    add(i, i + 1, r.up);
    rhs[static_cast<std::size_t>(i)] = r.rhs;
  }
  {
    const int i = n - 1;
    RobinData rd = end_condition(require_bc(spec, SegmentId::Circle), 0);
    if (rd.dirichlet) {
      add(i, i, 1.0);
      rhs[static_cast<std::size_t>(i)] = rd.g;
    } else {
      Row1d r = radial_interior_row(ce, fe, k, r1, drp);
      GhostFold gf = fold_ghost(r.up, drp, rd.alpha, rd.beta, rd.g);
      add(i, i, r.di + gf.diag);
      add(i, i - 1, r.lo + gf.mirror);
      rhs[static_cast<std::size_t>(i)] = r.rhs + gf.rhs;
    }
  }

  u.values() = sparse_solve(n, trips, rhs);
  return u;
}

}  // namespace

GridField solve_radial_mode(const BvpSpec& spec, int k, int n_nodes) {
  require_validated(spec);
  if (k < 0) throw UnsupportedError("angular mode must be >= 0");
  switch (spec.domain.kind()) {
    case DomainKind::Disk:
    case DomainKind::Annulus:
      if (spec.op.is_piecewise())
        throw SolverError("piecewise operator needs DiskWithInterface");
      return solve_radial_single(spec, k, n_nodes);
    case DomainKind::DiskWithInterface:
      if (!spec.op.is_piecewise())
        throw SolverError("DiskWithInterface expects a piecewise operator");
      return solve_radial_interface(spec, k, n_nodes);
    default:
      throw SolverError("radial solves need a disk or annulus domain");
  }
}

GridField solve_radial(const BvpSpec& spec, int n_nodes) {
  return solve_radial_mode(spec, 0, n_nodes);
}

GridField solve_disk_by_modes(const BvpSpec& spec, int nr, int ntheta,
                              int max_mode) {
  require_validated(spec);
  if (spec.domain.kind() != DomainKind::Disk)
    throw UnsupportedError("mode-by-mode solves cover disk domains only");
  if (nr < 4 || ntheta < 4)
    throw GridError("mode-by-mode solves need nr >= 4 and ntheta >= 4");
  if (max_mode < 0 || 2 * max_mode >= ntheta)
    throw GridError("mode cutoff must satisfy 2*max_mode < ntheta");
  const BoundaryCondition& bc = require_bc(spec, SegmentId::Circle);
  if (bc.kind != BcKind::Dirichlet)
    throw UnsupportedError("mode-by-mode solves take Dirichlet circle data");

  const double pi = 3.14159265358979323846264338328;
  const double R = spec.domain.radius();
  const CoefficientSet& cs = spec.op.coeffs();
  auto check_radial = [&](const std::function<double(Point)>& f,
                          const char* what) {
    for (double r : {0.35 * R, 0.8 * R})
      for (double t : {1.0, 2.3, 4.0}) {
        const double ref = f({r, 0.0});
        const double v = f({r * std::cos(t), r * std::sin(t)});
        if (std::abs(v - ref) > 1e-12 * (1.0 + std::abs(ref)))
          throw UnsupportedError(std::string("mode-by-mode solves need a radially symmetric ") + what);
      }
  };
  check_radial(spec.rhs, "rhs");
  check_radial([&](Point p) { return cs.a(p).xx; }, "diffusion coefficient");
  check_radial(cs.c, "reaction coefficient");

  std::vector<double> samples(static_cast<std::size_t>(ntheta));
  for (int j = 0; j < ntheta; ++j)
    samples[static_cast<std::size_t>(j)] = bc_entry(bc.g, j);
  const fourier::Modes modes = fourier::project(samples, max_mode);

  GridField out = GridField::polar(R, nr, ntheta);
  auto add_mode = [&](int k, double amp, bool is_sin) {
    // Mode 0 always runs: it carries the volume rhs even with zero boundary
    // amplitude. Higher modes with exactly-zero amplitude contribute nothing.
    if (k > 0 && amp == 0.0) return;
    BvpSpec mode_spec = spec;
    mode_spec.bcs = {BoundaryCondition::dirichlet(SegmentId::Circle, {amp})};
    if (k > 0) mode_spec.rhs = [](Point) { return 0.0; };
    mode_spec.validated = false;
    mode_spec = validate(std::move(mode_spec));
    const GridField radial = solve_radial_mode(mode_spec, k, nr + 1);
    for (int ring = 0; ring <= nr; ++ring)
      for (int j = 0; j < ntheta; ++j) {
        const double theta = 2.0 * pi * j / ntheta;
        const double basis = is_sin ? std::sin(k * theta) : std::cos(k * theta);
        out.at_polar(ring, j) += radial[ring] * basis;
      }
  };
  add_mode(0, modes.cos_coeff[0], false);
  for (int k = 1; k <= max_mode; ++k) {
    add_mode(k, modes.cos_coeff[static_cast<std::size_t>(k)], false);
    add_mode(k, modes.sin_coeff[static_cast<std::size_t>(k)], true);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pinned pure-Neumann problems
// ---------------------------------------------------------------------------

namespace {

struct PinnedSystem {
  std::vector<double> lo, di, up, rhs;
  std::vector<double> kernel;      // discrete left kernel (row weights)
  std::vector<double> node_coord;  // for quadrature in the shift step
};

constexpr double kCompatTol = 1e-8;

/// Finite-volume rows of -(sigma u')' = f (interval) or
/// -(1/r)(r sigma u')' = f (disk), sigma constant, all-Neumann data. The sum
/// of all rows telescopes to the total boundary flux, so the all-ones vector
/// is the exact discrete left kernel.
PinnedSystem assemble_pinned(const BvpSpec& spec, int n) {
  PinnedSystem s;
  s.lo.assign(static_cast<std::size_t>(n), 0.0);
  s.di = s.lo;
  s.up = s.lo;
  s.rhs = s.lo;
  s.kernel.assign(static_cast<std::size_t>(n), 1.0);

  const CoefficientSet& cs = spec.op.coeffs();
  auto check_constant_sigma = [&](double x0, double x1) {
    double ref = sigma_at(cs, x0);
    for (int i = 0; i <= 8; ++i) {
      double x = x0 + (x1 - x0) * i / 8.0;
      if (sigma_at(cs, x) != ref || cs.c({x, 0.0}) != 0.0)
        throw UnsupportedError(
            "pinned Neumann solves need constant sigma and zero reaction");
    }
    return ref;
  };

  if (spec.domain.kind() == DomainKind::Interval) {
    const double a = spec.domain.a(), b = spec.domain.b();
    const double sg = check_constant_sigma(a, b);
    const double dx = (b - a) / (n - 1);
    const double gl =
        bc_entry(require_bc(spec, SegmentId::IntervalLeft).g, 0);
    const double gr =
        bc_entry(require_bc(spec, SegmentId::IntervalRight).g, 0);
    for (int i = 0; i < n; ++i) {
      double x = a + i * dx;
      s.node_coord.push_back(x);
      if (i == 0) {
        // cell [a, a+dx/2]; boundary flux sigma*u'(a) = -sigma*g_left
        s.di[0] = sg / dx;
        s.up[0] = -sg / dx;
        s.rhs[0] = spec.rhs({x, 0.0}) * 0.5 * dx + sg * gl;
      } else if (i == n - 1) {
        s.di[static_cast<std::size_t>(i)] = sg / dx;
        s.lo[static_cast<std::size_t>(i)] = -sg / dx;
        s.rhs[static_cast<std::size_t>(i)] =
            spec.rhs({x, 0.0}) * 0.5 * dx + sg * gr;
      } else {
        s.lo[static_cast<std::size_t>(i)] = -sg / dx;
        s.di[static_cast<std::size_t>(i)] = 2.0 * sg / dx;
        s.up[static_cast<std::size_t>(i)] = -sg / dx;
        s.rhs[static_cast<std::size_t>(i)] = spec.rhs({x, 0.0}) * dx;
      }
    }
    return s;
  }

  if (spec.domain.kind() == DomainKind::Disk) {
    const double R = spec.domain.radius();
    const double sg = check_constant_sigma(0.0, R);
    const double dr = R / (n - 1);
    const double g = bc_entry(require_bc(spec, SegmentId::Circle).g, 0);
    for (int i = 0; i < n; ++i) {
      double r = i * dr;
      s.node_coord.push_back(r);
      double rm = r - 0.5 * dr, rp = r + 0.5 * dr;
      if (i == 0) {
        s.di[0] = sg * rp / dr;
        s.up[0] = -sg * rp / dr;
        s.rhs[0] = spec.rhs({r, 0.0}) * rp * rp / 2.0;
      } else if (i == n - 1) {
        s.lo[static_cast<std::size_t>(i)] = -sg * rm / dr;
        s.di[static_cast<std::size_t>(i)] = sg * rm / dr;
        s.rhs[static_cast<std::size_t>(i)] =
            spec.rhs({r, 0.0}) * (R * R - rm * rm) / 2.0 + sg * R * g;
      } else {
        s.lo[static_cast<std::size_t>(i)] = -sg * rm / dr;
        s.di[static_cast<std::size_t>(i)] = sg * (rm + rp) / dr;
        s.up[static_cast<std::size_t>(i)] = -sg * rp / dr;
        s.rhs[static_cast<std::size_t>(i)] =
            spec.rhs({r, 0.0}) * (rp * rp - rm * rm) / 2.0;
      }
    }
    return s;
  }

  throw UnsupportedError(
      "pinned Neumann solves cover intervals and disks only");
}

}  // namespace

double neumann_compatibility_residual(const BvpSpec& spec, int n_nodes) {
  const CoefficientSet& cs = spec.op.coeffs();
  if (spec.domain.kind() == DomainKind::Interval) {
    const double a = spec.domain.a(), b = spec.domain.b();
    const double dx = (b - a) / (n_nodes - 1);
    double integral = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
      double w = (i == 0 || i == n_nodes - 1) ? 0.5 * dx : dx;
      integral += w * spec.rhs({a + i * dx, 0.0});
    }
    double flux =
        sigma_at(cs, b) * bc_entry(require_bc(spec, SegmentId::IntervalRight).g, 0) +
        sigma_at(cs, a) * bc_entry(require_bc(spec, SegmentId::IntervalLeft).g, 0);
    return std::abs(integral + flux);
  }
  if (spec.domain.kind() == DomainKind::Disk) {
    const double R = spec.domain.radius();
    const double dr = R / (n_nodes - 1);
    double integral = 0.0;
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (int i = 0; i < n_nodes; ++i) {
      double r = i * dr;
      double w = (i == 0 || i == n_nodes - 1) ? 0.5 * dr : dr;
      integral += kTwoPi * r * w * spec.rhs({r, 0.0});
    }
    double flux = kTwoPi * R * sigma_at(cs, R) *
                  bc_entry(require_bc(spec, SegmentId::Circle).g, 0);
    return std::abs(integral + flux);
  }
  throw UnsupportedError("compatibility residual: intervals and disks only");
}

GridField solve_pinned_neumann(const BvpSpec& spec, int n_nodes) {
  require_validated(spec);
  for (const auto& bc : spec.bcs)
    if (bc.kind != BcKind::Neumann &&
        bc.kind != BcKind::NeumannWithCompatibility)
      throw SolverError("pinned solves need all-Neumann conditions");
  bool has_pin = false;
  double compat_value = 0.0;
  for (const auto& bc : spec.bcs)
    if (bc.kind == BcKind::NeumannWithCompatibility) {
      if (has_pin && bc.compat_value != compat_value)
        throw SolverError("pin value must agree across segments");
      has_pin = true;
      compat_value = bc.compat_value;
    }
  if (!has_pin)
    throw CompatibilityMissing("pinned solve without a pin condition");

  const double residual = neumann_compatibility_residual(spec, n_nodes);
  if (!(residual < kCompatTol))
    throw CompatibilityError("compatibility residual " +
                             std::to_string(residual) + " exceeds tolerance");

  PinnedSystem sys = assemble_pinned(spec, n_nodes);

  // Project the data onto the range of the singular operator (left kernel =
  // all ones for the finite-volume rows); this makes the solution independent
  // of the pinned node to machine precision.
  {
    double rho = 0.0, ww = 0.0;
    for (std::size_t i = 0; i < sys.rhs.size(); ++i) {
      rho += sys.kernel[i] * sys.rhs[i];
      ww += sys.kernel[i] * sys.kernel[i];
    }
    for (std::size_t i = 0; i < sys.rhs.size(); ++i)
      sys.rhs[i] -= rho / ww * sys.kernel[i];
  }

  // Pin the first node.
  sys.di[0] = 1.0;
  sys.up[0] = 0.0;
  sys.rhs[0] = 0.0;
  std::vector<double> vals =
      detail::solve_tridiagonal(sys.lo, sys.di, sys.up, sys.rhs);

  // Shift so the pin functional matches: sum_j w_j u_j (ds or counting).
  double current = 0.0, unit = 0.0;
  if (spec.domain.kind() == DomainKind::Interval) {
    for (const auto& bc : spec.bcs) {
      if (bc.kind != BcKind::NeumannWithCompatibility) continue;
      double w = bc.pin_weight.empty() ? 1.0 : bc.pin_weight[0];
      double uval = bc.segment == SegmentId::IntervalLeft ? vals.front()
                                                          : vals.back();
      current += w * uval;
      unit += w;
    }
  } else {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (const auto& bc : spec.bcs) {
      if (bc.kind != BcKind::NeumannWithCompatibility) continue;
      double w = bc.pin_weight.empty() ? 1.0 : bc.pin_weight[0];
      double circ = kTwoPi * spec.domain.radius();
      current += w * vals.back() * circ;
      unit += w * circ;
    }
  }
  if (unit == 0.0) throw DegenerateError("pin functional of the constant is zero");
  const double shift = (compat_value - current) / unit;

  GridField u = spec.domain.kind() == DomainKind::Interval
                    ? GridField::interval(spec.domain.a(), spec.domain.b(),
                                          n_nodes)
                    : GridField::radial(0.0, spec.domain.radius(), n_nodes);
  for (int i = 0; i < n_nodes; ++i)
    u[i] = vals[static_cast<std::size_t>(i)] + shift;
  return u;
}

}  // namespace bpx
