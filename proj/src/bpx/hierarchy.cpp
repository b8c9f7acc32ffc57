// SPDX-License-Identifier: MIT

/// @file hierarchy.cpp
/// @brief Recursive generation of the eps-independent expansion terms and of
///        the order-1/2 closed Robin problems, for Dirichlet, Neumann-edge,
///        and cubic-model interval problems.

#include "bpx/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "bpx/solvers.hpp"
#include "bpx/stencils.hpp"

namespace bpx {

namespace {

constexpr double kFactorial[4] = {1.0, 1.0, 2.0, 6.0};

// h^k by repeated multiplication so that the same power of h appearing in
// different terms of one boundary formula is the same floating-point value
// (exact cancellations in hand-checkable cases stay exact).
double ipow(double x, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= x;
  return p;
}

ScalarFn zero_fn() {
  return [](Point) { return 0.0; };
}

// Entry of a possibly-broadcast boundary array: empty = 0, size 1 = constant.
double field_entry(const BoundaryField& f, int j, int n, const char* what) {
  if (f.empty()) return 0.0;
  if (f.size() == 1) return f[0];
  if (static_cast<int>(f.size()) != n)
    throw GridError(std::string(what) + ": boundary array size mismatch");
  return f[static_cast<std::size_t>(j)];
}

// Central difference of f at p along the (dx, dy) direction.
double directional_diff(const ScalarFn& f, Point p, double dx, double dy) {
  const double delta = 1e-6;
  const Point plus{p.x + delta * dx, p.y + delta * dy};
  const Point minus{p.x - delta * dx, p.y - delta * dy};
  return (f(plus) - f(minus)) / (2.0 * delta);
}

std::vector<double> sample_profile(const BoundaryGrid& grid,
                                   const BoundaryProfile& profile) {
  return grid.sample([&](double t) { return profile.value(t); });
}

std::vector<double> sample_profile_d1(const BoundaryGrid& grid,
                                      const BoundaryProfile& profile) {
  return grid.sample([&](double t) { return profile.d1(t); });
}

// Sample a scalar field on the grid's physical node positions.
BoundaryField sample_on_grid(const BoundaryGrid& grid, const ScalarFn& f) {
  return grid.sample([&](double t) { return f(grid.frame().position(t)); });
}

}  // namespace

ReducerContext make_reducer_context(const ReferenceDomain& domain,
                                    const EllipticOperator& op,
                                    const ScalarFn& rhs,
                                    const ScalarFn& rhs_normal, int n_nodes) {
  if (op.is_piecewise())
    throw UnsupportedError(
        "boundary reduction expects a single-region operator");
  const SegmentId seg = domain.perturbed_segment();
  BoundaryGrid grid(segment_frame(domain, seg), n_nodes);
  const CoefficientSet& cs = op.coeffs();
  const int n = grid.size();
  const bool point = grid.frame().is_point();
  const bool periodic = grid.frame().periodic();

  BoundaryField sigma(n), c(n), dn_sigma(n), ds_sigma(n), advect(n), phi(n),
      dn_phi(n);
  auto sigma_at = [&](Point q) { return cs.a(q).xx; };
  for (int j = 0; j < n; ++j) {
    const double t = grid.param(j);
    const Point p = grid.frame().position(t);
    const Point nrm = grid.frame().outward_normal(t);
    const Matrix2 a = cs.a(p);
    if (a.xy != 0.0 || (!point && a.xx != a.yy))
      throw UnsupportedError(
          "boundary reduction needs isotropic diffusion at the boundary");
    sigma[j] = a.xx;
    c[j] = cs.c(p);
    phi[j] = rhs(p);
    if (point) {
      // 1D: the reduction keeps the full drift through advect = b - a'.
      advect[j] = cs.b1(p) - directional_diff(sigma_at, p, 1.0, 0.0);
      dn_sigma[j] = directional_diff(sigma_at, p, nrm.x, nrm.y);
      ds_sigma[j] = 0.0;
    } else {
      if (cs.b1(p) != 0.0 || cs.b2(p) != 0.0)
        throw UnsupportedError(
            "boundary reduction along edges and curves needs b = 0");
      advect[j] = 0.0;
      dn_sigma[j] = directional_diff(sigma_at, p, nrm.x, nrm.y);
      const Point tau = grid.frame().unit_tangent(t);
      ds_sigma[j] = directional_diff(sigma_at, p, tau.x, tau.y);
    }
    dn_phi[j] = rhs_normal ? rhs_normal(p)
                           : directional_diff(rhs, p, nrm.x, nrm.y);
  }
  if (!point && !periodic) {
    // Straight-edge reduction assumes the diffusion coefficient is constant
    // near the edge: probe tangentially sampled values plus two interior
    // offsets and reject visible variation.
    double lo = sigma[0], hi = sigma[0];
    for (int j = 0; j < n; ++j) {
      lo = std::min(lo, sigma[j]);
      hi = std::max(hi, sigma[j]);
    }
    const double t_mid =
        0.5 * (grid.frame().param_begin() + grid.frame().param_end());
    const Point pm = grid.frame().position(t_mid);
    const Point nm = grid.frame().outward_normal(t_mid);
    for (double depth : {1e-3, 2e-3}) {
      const double s =
          sigma_at({pm.x - depth * nm.x, pm.y - depth * nm.y});
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (hi - lo > 1e-12 * (1.0 + std::abs(hi)))
      throw UnsupportedError(
          "straight-edge reduction needs a constant diffusion coefficient");
  }
  return ReducerContext{std::move(grid),     std::move(sigma),
                        std::move(c),        std::move(dn_sigma),
                        std::move(ds_sigma), std::move(advect),
                        std::move(phi),      std::move(dn_phi)};
}

GridField ExpansionSeries::partial_sum(int n, double eps) const {
  if (terms.empty()) throw DataError("expansion series holds no terms");
  if (n < 0 || n >= static_cast<int>(terms.size()))
    throw DataError("partial sum order exceeds the computed terms");
  GridField out = terms[0].field;
  double p = 1.0;
  for (int k = 1; k <= n; ++k) {
    p *= eps;
    out.axpy(p, terms[static_cast<std::size_t>(k)].field);
  }
  return out;
}

BoundaryField smooth_dirichlet_bc(int n,
                                  const std::vector<BoundaryField>& g_traces,
                                  const BoundaryProfile& profile,
                                  const std::vector<TermTraces>& lower,
                                  const ReducerContext& ctx) {
  if (n < 1 || n > 3)
    throw UnsupportedError("recursive boundary data stops at order 3");
  if (static_cast<int>(lower.size()) < n)
    throw DataError("recursive boundary data needs all lower-order traces");
  const int m = ctx.grid.size();
  const std::vector<double> h = sample_profile(ctx.grid, profile);

  BoundaryField out(static_cast<std::size_t>(m), 0.0);
  const bool have_g = static_cast<int>(g_traces.size()) > n;
  for (int j = 0; j < m; ++j) {
    double v = 0.0;
    if (have_g)
      v += ipow(h[static_cast<std::size_t>(j)], n) / kFactorial[n] *
           field_entry(g_traces[static_cast<std::size_t>(n)], j, m, "g trace");
    v -= h[static_cast<std::size_t>(j)] *
         field_entry(lower[static_cast<std::size_t>(n - 1)].normal, j, m,
                     "normal trace");
    out[static_cast<std::size_t>(j)] = v;
  }
  for (int k = 2; k <= n; ++k) {
    // Terms below the top order solve the homogeneous equation, so their
    // reduction sees no interior source.
    ReducerContext local = ctx;
    if (k < n) {
      local.phi = {0.0};
      local.dn_phi = {0.0};
    }
    const TermTraces& tr = lower[static_cast<std::size_t>(n - k)];
    const BoundaryField fk = reduce(local, k, tr.value, tr.normal);
    for (int j = 0; j < m; ++j)
      out[static_cast<std::size_t>(j)] -=
          ipow(h[static_cast<std::size_t>(j)], k) / kFactorial[k] *
          fk[static_cast<std::size_t>(j)];
  }
  return out;
}

namespace {

// g, dn(g), dn^2(g), ... sampled on the perturbed-segment grid. Missing
// entries of g_normal mean identically-zero derivatives.
std::vector<BoundaryField> sample_g_traces(const SmoothProblem& problem,
                                           const BoundaryGrid& grid,
                                           int max_order) {
  std::vector<BoundaryField> out;
  out.push_back(sample_on_grid(grid, problem.g));
  for (int k = 1; k <= max_order; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    if (idx < problem.g_normal.size() && problem.g_normal[idx])
      out.push_back(sample_on_grid(grid, problem.g_normal[idx]));
    else
      out.emplace_back(grid.size(), 0.0);
  }
  return out;
}

BoundaryField sample_rect_edge(const ReferenceDomain& domain, SegmentId seg,
                               int nx, int ny, const ScalarFn& f) {
  const double lx = domain.length_x();
  const double ly = domain.length_y();
  BoundaryField out;
  if (seg == SegmentId::RectLeft || seg == SegmentId::RectRight) {
    const double x = seg == SegmentId::RectRight ? lx : 0.0;
    out.reserve(static_cast<std::size_t>(ny) + 1);
    for (int j = 0; j <= ny; ++j)
      out.push_back(f({x, ly * static_cast<double>(j) / ny}));
  } else {
    const double y = seg == SegmentId::RectTop ? ly : 0.0;
    out.reserve(static_cast<std::size_t>(nx) + 1);
    for (int i = 0; i <= nx; ++i)
      out.push_back(f({lx * static_cast<double>(i) / nx, y}));
  }
  return out;
}

// Solve one term's problem on the reference domain.
GridField solve_term(const BvpSpec& spec, const SmoothProblem& problem) {
  switch (problem.domain.kind()) {
    case DomainKind::Interval:
      return solve_interval(spec, problem.n_nodes);
    case DomainKind::Rectangle:
      return solve_rectangle(spec, problem.nx, problem.ny);
    case DomainKind::Disk:
      return solve_disk_by_modes(spec, problem.n_nodes - 1, problem.ntheta,
                                 problem.max_mode);
    default:
      throw UnsupportedError(
          "expansion terms cover interval, rectangle, and disk domains");
  }
}

// Dirichlet conditions for one term: recursion data on the perturbed
// segment, order-0 data (n = 0) or homogeneous data (n >= 1) elsewhere.
std::vector<BoundaryCondition> term_bcs(const SmoothProblem& problem, int n,
                                        BoundaryField perturbed_data) {
  const SegmentId pseg = problem.domain.perturbed_segment();
  std::vector<BoundaryCondition> bcs;
  for (SegmentId seg : problem.domain.boundary_segments()) {
    if (seg == pseg) {
      bcs.push_back(BoundaryCondition::dirichlet(seg, perturbed_data));
      continue;
    }
    if (n > 0) {
      bcs.push_back(BoundaryCondition::dirichlet(seg, {0.0}));
      continue;
    }
    BoundaryField data;
    switch (problem.domain.kind()) {
      case DomainKind::Interval:
        data = {problem.g({problem.domain.a(), 0.0})};
        break;
      case DomainKind::Rectangle:
        data = sample_rect_edge(problem.domain, seg, problem.nx, problem.ny,
                                problem.g);
        break;
      default:
        throw UnsupportedError(
            "expansion terms cover interval, rectangle, and disk domains");
    }
    bcs.push_back(BoundaryCondition::dirichlet(seg, std::move(data)));
  }
  return bcs;
}

int perturbed_grid_nodes(const SmoothProblem& problem) {
  switch (problem.domain.kind()) {
    case DomainKind::Interval:
      return 1;
    case DomainKind::Rectangle:
      return problem.ny + 1;
    case DomainKind::Disk:
      return problem.ntheta;
    default:
      throw UnsupportedError(
          "expansion terms cover interval, rectangle, and disk domains");
  }
}

}  // namespace

ExpansionSeries compute_terms(const SmoothProblem& problem, int max_order) {
  if (max_order < 0 || max_order > 3)
    throw UnsupportedError("expansion terms are available up to order 3");
  const SegmentId pseg = problem.domain.perturbed_segment();
  const ReducerContext ctx =
      make_reducer_context(problem.domain, problem.op, problem.rhs,
                           problem.rhs_normal, perturbed_grid_nodes(problem));
  const std::vector<BoundaryField> g_traces =
      sample_g_traces(problem, ctx.grid, max_order);

  ExpansionSeries series;
  series.regime = ExpansionRegime::Smooth;
  std::vector<TermTraces> lower;
  for (int n = 0; n <= max_order; ++n) {
    BvpSpec spec;
    spec.domain = problem.domain;
    spec.op = problem.op;
    spec.rhs = n == 0 ? problem.rhs : zero_fn();
    BoundaryField data =
        n == 0 ? g_traces[0]
               : smooth_dirichlet_bc(n, g_traces, problem.profile, lower, ctx);
    spec.bcs = term_bcs(problem, n, std::move(data));
    spec = validate(std::move(spec));
    GridField field = solve_term(spec, problem);
    TermTraces traces{field.trace(pseg), field.normal_derivative(pseg, 3)};
    lower.push_back(traces);
    series.terms.push_back(
        {std::move(field), std::move(spec), std::move(traces)});
  }
  return series;
}

BvpSpec closed_problem(int n, const SmoothProblem& problem, double eps) {
  if (n < 1 || n > 2)
    throw UnsupportedError("closed problems are available at orders 1 and 2");
  if (n == 2 && problem.domain.kind() != DomainKind::Interval)
    throw UnsupportedError(
        "order-2 closed problems keep Robin form only on intervals");
  const ReducerContext ctx =
      make_reducer_context(problem.domain, problem.op, problem.rhs,
                           problem.rhs_normal, perturbed_grid_nodes(problem));
  const std::vector<BoundaryField> g_traces =
      sample_g_traces(problem, ctx.grid, 2);
  const std::vector<double> h = sample_profile(ctx.grid, problem.profile);
  const int m = ctx.grid.size();

  BvpSpec spec;
  spec.domain = problem.domain;
  spec.op = problem.op;
  spec.rhs = problem.rhs;

  BoundaryField alpha(static_cast<std::size_t>(m)),
      beta(static_cast<std::size_t>(m)), data(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double hj = h[ju];
    const double g0 = field_entry(g_traces[0], j, m, "g");
    const double g1 = field_entry(g_traces[1], j, m, "dn g");
    alpha[ju] = 1.0;
    beta[ju] = eps * hj;
    data[ju] = g0 + eps * hj * g1;
    if (n == 2) {
      // Trade the second normal derivative for zero-order data through the
      // interior equation at the endpoint: the correction shifts both Robin
      // coefficients and the data.
      const double w = eps * eps * hj * hj / 2.0;
      const double g2 = field_entry(g_traces[2], j, m, "dn^2 g");
      const double sig = ctx.sigma[ju];
      const double nx = ctx.grid.frame().outward_normal(ctx.grid.param(j)).x;
      alpha[ju] += w * ctx.c[ju] / sig;
      beta[ju] += w * (ctx.advect[ju] / sig) * nx;
      data[ju] += w * g2 + w * ctx.phi[ju] / sig;
    }
  }

  const SegmentId pseg = problem.domain.perturbed_segment();
  if (problem.domain.kind() == DomainKind::Disk) {
    // The angular-mode solver carries a single Robin coefficient, so the
    // profile and the data must be angle-independent here.
    auto spread = [](const BoundaryField& f) {
      double lo = f[0], hi = f[0];
      for (double v : f) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return hi - lo;
    };
    if (spread(beta) > 1e-14 * (1.0 + std::abs(beta[0])) ||
        spread(data) > 1e-14 * (1.0 + std::abs(data[0])))
      throw UnsupportedError(
          "disk closed problems need an angle-independent profile and data");
    alpha = {1.0};
    beta = {beta[0]};
    data = {data[0]};
  }

  for (SegmentId seg : problem.domain.boundary_segments()) {
    if (seg == pseg) {
      spec.bcs.push_back(
          BoundaryCondition::robin(seg, alpha, beta, data));
      continue;
    }
    BoundaryField fixed;
    switch (problem.domain.kind()) {
      case DomainKind::Interval:
        fixed = {problem.g({problem.domain.a(), 0.0})};
        break;
      case DomainKind::Rectangle:
        fixed = sample_rect_edge(problem.domain, seg, problem.nx, problem.ny,
                                 problem.g);
        break;
      default:
        throw UnsupportedError(
            "closed problems cover interval, rectangle, and disk domains");
    }
    spec.bcs.push_back(BoundaryCondition::dirichlet(seg, std::move(fixed)));
  }
  return validate(std::move(spec));
}

BoundaryField neumann_rect_bc(int m, const BoundaryProfile& profile,
                              const std::vector<TermTraces>& lower,
                              const ReducerContext& ctx) {
  if (m < 0 || m > 2)
    throw UnsupportedError("recursive Neumann data stops at order 2");
  if (ctx.grid.frame().is_point() || ctx.grid.frame().periodic())
    throw GridError("recursive Neumann data runs on an open edge grid");
  const int n = ctx.grid.size();
  BoundaryField out(static_cast<std::size_t>(n), 0.0);
  if (m == 0) return out;
  if (static_cast<int>(lower.size()) < m)
    throw DataError("recursive Neumann data needs all lower-order traces");

  const std::vector<double> h = sample_profile(ctx.grid, profile);
  const std::vector<double> hp = sample_profile_d1(ctx.grid, profile);
  const double ds = ctx.grid.ds();

  ReducerContext interior = ctx;  // terms above order 0 have no source
  interior.phi = {0.0};
  interior.dn_phi = {0.0};

  if (m == 1) {
    const std::vector<double> ds_w0 = stencil::d1_edge2(lower[0].value, ds);
    const BoundaryField f2 = reduce(ctx, 2, lower[0].value, lower[0].normal);
    for (int j = 0; j < n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      out[ju] = hp[ju] * ds_w0[ju] - h[ju] * f2[ju];
    }
    return out;
  }
  const std::vector<double> ds_w1 = stencil::d1_edge2(lower[1].value, ds);
  const std::vector<double> ds_dnw0 = stencil::d1_edge2(lower[0].normal, ds);
  const BoundaryField f2w1 =
      reduce(interior, 2, lower[1].value, lower[1].normal);
  const BoundaryField f3w0 = reduce(ctx, 3, lower[0].value, lower[0].normal);
  for (int j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    out[ju] = hp[ju] * ds_w1[ju] + h[ju] * hp[ju] * ds_dnw0[ju] -
              h[ju] * f2w1[ju] - h[ju] * h[ju] / 2.0 * f3w0[ju];
  }
  return out;
}

ExpansionSeries neumann_rect_terms(const SmoothProblem& problem,
                                   int max_order) {
  if (max_order < 0 || max_order > 2)
    throw UnsupportedError("recursive Neumann terms stop at order 2");
  if (problem.domain.kind() != DomainKind::Rectangle)
    throw UnsupportedError("recursive Neumann terms run on rectangles");
  const SegmentId pseg = problem.domain.perturbed_segment();
  const ReducerContext ctx =
      make_reducer_context(problem.domain, problem.op, problem.rhs,
                           problem.rhs_normal, perturbed_grid_nodes(problem));

  ExpansionSeries series;
  series.regime = ExpansionRegime::NeumannSmooth;
  std::vector<TermTraces> lower;
  for (int m = 0; m <= max_order; ++m) {
    BvpSpec spec;
    spec.domain = problem.domain;
    spec.op = problem.op;
    spec.rhs = m == 0 ? problem.rhs : zero_fn();
    for (SegmentId seg : problem.domain.boundary_segments()) {
      if (seg == pseg) {
        spec.bcs.push_back(BoundaryCondition::neumann(
            seg, neumann_rect_bc(m, problem.profile, lower, ctx)));
        continue;
      }
      BoundaryField data =
          m == 0 ? sample_rect_edge(problem.domain, seg, problem.nx,
                                    problem.ny, problem.g)
                 : BoundaryField{0.0};
      spec.bcs.push_back(BoundaryCondition::dirichlet(seg, std::move(data)));
    }
    spec = validate(std::move(spec));
    GridField field = solve_rectangle(spec, problem.nx, problem.ny);
    TermTraces traces{field.trace(pseg), field.normal_derivative(pseg, 3)};
    lower.push_back(traces);
    series.terms.push_back(
        {std::move(field), std::move(spec), std::move(traces)});
  }
  return series;
}

GridField solve_cubic_model(const ScalarFn& f, double a, double b,
                            int n_nodes) {
  if (n_nodes < 5) throw GridError("cubic model needs at least 5 nodes");
  GridField u = GridField::interval(a, b, n_nodes);
  const double dx = u.dx();
  const int n = n_nodes;
  std::vector<double> fv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    fv[static_cast<std::size_t>(i)] = f({u.coord1d(i), 0.0});

  double f_norm = 0.0;
  for (double v : fv) f_norm = std::max(f_norm, std::abs(v));

  u.fill(0.0);
  std::vector<double> lo(static_cast<std::size_t>(n)),
      di(static_cast<std::size_t>(n)), up(static_cast<std::size_t>(n)),
      rhs(static_cast<std::size_t>(n));
  for (int iter = 0; iter <= 50; ++iter) {
    double residual = 0.0;
    double u_norm = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      u_norm = std::max(u_norm, std::abs(u[i]));
      if (i == 0 || i == n - 1) {
        lo[iu] = up[iu] = 0.0;
        di[iu] = 1.0;
        rhs[iu] = -u[i];
        residual = std::max(residual, std::abs(u[i]));
        continue;
      }
      const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (dx * dx);
      const double res = -lap + u[i] - u[i] * u[i] * u[i] - fv[iu];
      residual = std::max(residual, std::abs(res));
      lo[iu] = up[iu] = -1.0 / (dx * dx);
      di[iu] = 2.0 / (dx * dx) + 1.0 - 3.0 * u[i] * u[i];
      rhs[iu] = -res;
    }
    // The raw residual cannot drop below the rounding floor of the second
    // difference (~ 2 |u| eps / dx^2), so the 1e-12 target is measured above
    // that floor.
    const double eps = std::numeric_limits<double>::epsilon();
    const double tol =
        1e-12 * (1.0 + f_norm) + 8.0 * eps * u_norm * 2.0 / (dx * dx);
    if (residual <= tol) return u;
    if (iter == 50) break;
    const std::vector<double> delta = detail::solve_tridiagonal(lo, di, up, rhs);
    for (int i = 0; i < n; ++i) u[i] += delta[static_cast<std::size_t>(i)];
  }
  throw SolverError("cubic-model Newton iteration did not converge");
}

GridField nonlinear_rhs(const std::vector<GridField>& lower, int n) {
  if (n < 1) throw DataError("nonlinear source starts at order 1");
  if (static_cast<int>(lower.size()) < n)
    throw DataError("nonlinear source needs terms 0..n-1");
  GridField out = lower[0].like_zero();
  const int size = out.size();
  // Sum of u_p u_q u_r over ordered triples p <= q <= r < n with
  // p + q + r = n, each weighted by its number of permutations.
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      const int r = n - p - q;
      if (r < q || r >= n) continue;
      const double w = (p == q && q == r) ? 1.0 : (p == q || q == r) ? 3.0 : 6.0;
      for (int i = 0; i < size; ++i)
        out[i] += w * lower[static_cast<std::size_t>(p)][i] *
                  lower[static_cast<std::size_t>(q)][i] *
                  lower[static_cast<std::size_t>(r)][i];
    }
  }
  return out;
}

namespace {

// Piecewise-linear interpolant through uniform samples; exact at the nodes.
ScalarFn interp_interval(std::vector<double> samples, double a, double dx) {
  auto data = std::make_shared<std::vector<double>>(std::move(samples));
  return [data, a, dx](Point p) {
    const auto n = static_cast<int>(data->size());
    double s = (p.x - a) / dx;
    int i = static_cast<int>(std::floor(s));
    if (i < 0) i = 0;
    if (i > n - 2) i = n - 2;
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * (*data)[static_cast<std::size_t>(i)] +
           w * (*data)[static_cast<std::size_t>(i + 1)];
  };
}

}  // namespace

ExpansionSeries nonlinear_hierarchy(const SmoothProblem& problem,
                                    int max_order) {
  if (max_order < 0 || max_order > 3)
    throw UnsupportedError("cubic-model terms are available up to order 3");
  if (problem.domain.kind() != DomainKind::Interval)
    throw UnsupportedError("the cubic model runs on interval domains");
  const double a = problem.domain.a();
  const double b = problem.domain.b();

  GridField u0 = solve_cubic_model(problem.rhs, a, b, problem.n_nodes);
  const double dx = u0.dx();

  // Boundary samples at the perturbed (right) endpoint.
  BoundaryGrid grid(segment_frame(problem.domain, SegmentId::IntervalRight), 1);
  const double h = problem.profile.value(grid.param(0));
  const double u0b = u0.trace(SegmentId::IntervalRight)[0];
  const double dnu0b = u0.normal_derivative(SegmentId::IntervalRight, 3)[0];
  const double fb = problem.rhs({b, 0.0});
  const double fpb = problem.rhs_normal
                         ? problem.rhs_normal({b, 0.0})
                         : directional_diff(problem.rhs, {b, 0.0}, 1.0, 0.0);

  // Effective reduction data per term: the order-0 term satisfies
  // -u'' + u = f + u0^3, terms above satisfy -u'' + (1 - 3 u0^2) u = R_n.
  auto term_context = [&](double c_val, double phi_val,
                          double dn_phi_val) {
    return ReducerContext{grid,      {1.0},     {c_val}, {0.0},
                          {0.0},     {0.0},     {phi_val}, {dn_phi_val}};
  };
  const double c_lin_b = 1.0 - 3.0 * u0b * u0b;
  const ReducerContext ctx0 =
      term_context(1.0, fb + u0b * u0b * u0b,
                   fpb + 3.0 * u0b * u0b * dnu0b);

  // Record the order-0 term as the fixed-point problem it satisfies.
  std::vector<double> u0_cubed(u0.values());
  for (double& v : u0_cubed) v = v * v * v;
  ScalarFn f_fn = problem.rhs;
  ScalarFn cube_fn = interp_interval(std::move(u0_cubed), a, dx);
  BvpSpec spec0;
  spec0.domain = problem.domain;
  spec0.op = EllipticOperator::isotropic(1.0, 1.0);
  spec0.rhs = [f_fn, cube_fn](Point p) { return f_fn(p) + cube_fn(p); };
  spec0.bcs = {BoundaryCondition::dirichlet(SegmentId::IntervalLeft, {0.0}),
               BoundaryCondition::dirichlet(SegmentId::IntervalRight, {0.0})};
  spec0 = validate(std::move(spec0));

  ExpansionSeries series;
  series.regime = ExpansionRegime::NonlinearSmooth;
  TermTraces traces0{u0.trace(SegmentId::IntervalRight),
                     u0.normal_derivative(SegmentId::IntervalRight, 3)};
  std::vector<GridField> fields{u0};
  std::vector<TermTraces> lower{traces0};
  series.terms.push_back({std::move(u0), std::move(spec0), std::move(traces0)});

  // Shared linearized operator: -u'' + (1 - 3 u0^2) u.
  std::vector<double> c_lin(fields[0].values());
  for (double& v : c_lin) v = 1.0 - 3.0 * v * v;
  CoefficientSet lin;
  lin.c = interp_interval(std::move(c_lin), a, dx);
  const EllipticOperator lin_op = EllipticOperator::general(std::move(lin));

  for (int n = 1; n <= max_order; ++n) {
    GridField rn = nonlinear_rhs(fields, n);

    // Boundary data: -h dn(u_{n-1}) - sum_k (h^k/k!) F_k[u_{n-k}].
    double bc = -h * lower[static_cast<std::size_t>(n - 1)].normal[0];
    for (int k = 2; k <= n; ++k) {
      const int j = n - k;
      ReducerContext ctx = ctx0;
      if (j >= 1) {
        // Term j satisfies the linearized equation with source R_j; only
        // k = 2 reaches j >= 1 while n <= 3, so dn(R_j) is never needed.
        const double rjb =
            nonlinear_rhs(fields, j).trace(SegmentId::IntervalRight)[0];
        ctx = term_context(c_lin_b, rjb, 0.0);
      }
      const TermTraces& tr = lower[static_cast<std::size_t>(j)];
      const BoundaryField fk = reduce(ctx, k, tr.value, tr.normal);
      bc -= ipow(h, k) / kFactorial[k] * fk[0];
    }

    BvpSpec spec;
    spec.domain = problem.domain;
    spec.op = lin_op;
    spec.rhs = interp_interval(rn.values(), a, dx);
    spec.bcs = {BoundaryCondition::dirichlet(SegmentId::IntervalLeft, {0.0}),
                BoundaryCondition::dirichlet(SegmentId::IntervalRight, {bc})};
    spec = validate(std::move(spec));
    GridField field = solve_interval(spec, problem.n_nodes);
    TermTraces traces{field.trace(SegmentId::IntervalRight),
                      field.normal_derivative(SegmentId::IntervalRight, 3)};
    fields.push_back(field);
    lower.push_back(traces);
    series.terms.push_back(
        {std::move(field), std::move(spec), std::move(traces)});
  }
  return series;
}

}  // namespace bpx
