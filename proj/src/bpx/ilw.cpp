// SPDX-License-Identifier: MIT

/// @file ilw.cpp
/// @brief Normal-derivative reduction operators.

#include "bpx/ilw.hpp"

#include <cmath>

namespace bpx {

namespace {

double field_at(const BoundaryField& f, int j, double fallback = 0.0) {
  if (f.empty()) return fallback;
  if (f.size() == 1) return f[0];
  return f.at(static_cast<std::size_t>(j));
}

void check_sizes(const ReducerContext& ctx, const BoundaryField& u,
                 const BoundaryField& dnu) {
  const auto n = static_cast<std::size_t>(ctx.grid.size());
  auto ok = [&](const BoundaryField& f) {
    return f.empty() || f.size() == 1 || f.size() == n;
  };
  if (!ok(u) || !ok(dnu) || !ok(ctx.sigma) || !ok(ctx.c) || !ok(ctx.phi) ||
      !ok(ctx.dn_phi) || !ok(ctx.dn_sigma) || !ok(ctx.ds_sigma) ||
      !ok(ctx.advect))
    throw GridError("trace fields must match the boundary grid");
  for (int j = 0; j < ctx.grid.size(); ++j)
    if (!(field_at(ctx.sigma, j, 1.0) > 0.0))
      throw EllipticityError("sigma must be positive on the boundary");
}

void require_dn_phi(const ReducerContext& ctx) {
  if (ctx.dn_phi.empty())
    throw DataError(
        "third-order reduction needs the normal derivative of the rhs");
}

/// Expands a (possibly broadcast) field to one value per grid node so the
/// tangential stencils can act on it.
std::vector<double> expand(const ReducerContext& ctx, const BoundaryField& f) {
  std::vector<double> out(static_cast<std::size_t>(ctx.grid.size()));
  for (int j = 0; j < ctx.grid.size(); ++j)
    out[static_cast<std::size_t>(j)] = field_at(f, j);
  return out;
}

void require_no_reaction(const ReducerContext& ctx) {
  for (int j = 0; j < ctx.grid.size(); ++j)
    if (field_at(ctx.c, j) != 0.0)
      throw UnsupportedError(
          "closed-curve reductions are derived without a reaction term");
}

double constant_sigma(const ReducerContext& ctx) {
  double s0 = field_at(ctx.sigma, 0, 1.0);
  for (int j = 0; j < ctx.grid.size(); ++j) {
    if (field_at(ctx.sigma, j, 1.0) != s0 || field_at(ctx.dn_sigma, j) != 0.0 ||
        field_at(ctx.ds_sigma, j) != 0.0)
      throw UnsupportedError(
          "third-order closed-curve reduction needs constant sigma");
  }
  return s0;
}

}  // namespace

BoundaryField reduce_rect_k2(const ReducerContext& ctx, const BoundaryField& u,
                             const BoundaryField& dnu) {
  check_sizes(ctx, u, dnu);
  if (ctx.grid.periodic() || ctx.grid.frame().is_point())
    throw GridError("rectangle-edge reduction needs an open edge grid");
  (void)dnu;  // enters only at third order
  auto uu = expand(ctx, u);
  auto d2u = stencil::d2_edge2(uu, ctx.grid.ds());
  BoundaryField out(uu.size());
  for (int j = 0; j < ctx.grid.size(); ++j) {
    double s = field_at(ctx.sigma, j, 1.0);
    out[static_cast<std::size_t>(j)] =
        -field_at(ctx.phi, j) / s + field_at(ctx.c, j) / s * uu[j] - d2u[j];
  }
  return out;
}

BoundaryField reduce_rect_k3(const ReducerContext& ctx, const BoundaryField& u,
                             const BoundaryField& dnu) {
  check_sizes(ctx, u, dnu);
  if (ctx.grid.periodic() || ctx.grid.frame().is_point())
    throw GridError("rectangle-edge reduction needs an open edge grid");
  require_dn_phi(ctx);
  (void)u;  // enters only at second order
  auto dd = expand(ctx, dnu);
  auto d2dnu = stencil::d2_edge2(dd, ctx.grid.ds());
  BoundaryField out(dd.size());
  for (int j = 0; j < ctx.grid.size(); ++j) {
    double s = field_at(ctx.sigma, j, 1.0);
    out[static_cast<std::size_t>(j)] =
        -d2dnu[j] + (field_at(ctx.c, j) * dd[j] - field_at(ctx.dn_phi, j)) / s;
  }
  return out;
}

BoundaryField reduce_curv_k2(const ReducerContext& ctx, const BoundaryField& u,
                             const BoundaryField& dnu) {
  check_sizes(ctx, u, dnu);
  if (!ctx.grid.periodic())
    throw GridError("closed-curve reduction needs a periodic grid");
  require_no_reaction(ctx);
  auto uu = expand(ctx, u);
  auto dsu = stencil::d1_periodic4(uu, ctx.grid.ds());
  auto d2u = stencil::d2_periodic4(uu, ctx.grid.ds());
  BoundaryField out(uu.size());
  for (int j = 0; j < ctx.grid.size(); ++j) {
    double s = field_at(ctx.sigma, j, 1.0);
    double kappa = ctx.grid.frame().curvature(ctx.grid.param(j));
    double dn = field_at(dnu, j);
    out[static_cast<std::size_t>(j)] =
        -field_at(ctx.phi, j) / s - field_at(ctx.ds_sigma, j) / s * dsu[j] -
        field_at(ctx.dn_sigma, j) / s * dn - d2u[j] - kappa * dn;
  }
  return out;
}

BoundaryField reduce_curv_k3(const ReducerContext& ctx, const BoundaryField& u,
                             const BoundaryField& dnu) {
  check_sizes(ctx, u, dnu);
  if (!ctx.grid.periodic())
    throw GridError("closed-curve reduction needs a periodic grid");
  require_no_reaction(ctx);
  require_dn_phi(ctx);
  const double s = constant_sigma(ctx);
  auto uu = expand(ctx, u);
  auto dd = expand(ctx, dnu);
  auto dsu = stencil::d1_periodic4(uu, ctx.grid.ds());
  auto d2u = stencil::d2_periodic4(uu, ctx.grid.ds());
  auto d2dnu = stencil::d2_periodic4(dd, ctx.grid.ds());
  std::vector<double> kappa(uu.size());
  for (int j = 0; j < ctx.grid.size(); ++j)
    kappa[static_cast<std::size_t>(j)] =
        ctx.grid.frame().curvature(ctx.grid.param(j));
  auto dkappa = stencil::d1_periodic4(kappa, ctx.grid.ds());
  BoundaryField out(uu.size());
  for (int j = 0; j < ctx.grid.size(); ++j) {
    out[static_cast<std::size_t>(j)] =
        dkappa[j] * dsu[j] + 3.0 * kappa[j] * d2u[j] +
        2.0 * kappa[j] * kappa[j] * dd[j] - d2dnu[j] +
        (kappa[j] * field_at(ctx.phi, j) - field_at(ctx.dn_phi, j)) / s;
  }
  return out;
}

BoundaryField reduce_point_k2(const ReducerContext& ctx,
                              const BoundaryField& u,
                              const BoundaryField& dnu) {
  check_sizes(ctx, u, dnu);
  if (!ctx.grid.frame().is_point())
    throw GridError("endpoint reduction needs an interval-endpoint frame");
  double s = field_at(ctx.sigma, 0, 1.0);
  double nx = ctx.grid.frame().outward_normal(0.0).x;
  double val = (field_at(ctx.c, 0) * field_at(u, 0) - field_at(ctx.phi, 0)) / s +
               field_at(ctx.advect, 0) / s * nx * field_at(dnu, 0);
  return {val};
}

BoundaryField reduce_point_k3(const ReducerContext& ctx,
                              const BoundaryField& u,
                              const BoundaryField& dnu) {
  check_sizes(ctx, u, dnu);
  if (!ctx.grid.frame().is_point())
    throw GridError("endpoint reduction needs an interval-endpoint frame");
  require_dn_phi(ctx);
  double s = field_at(ctx.sigma, 0, 1.0);
  double nx = ctx.grid.frame().outward_normal(0.0).x;
  double val =
      (field_at(ctx.c, 0) * field_at(dnu, 0) - field_at(ctx.dn_phi, 0)) / s;
  if (field_at(ctx.advect, 0) != 0.0)
    val += nx * field_at(ctx.advect, 0) / s * reduce_point_k2(ctx, u, dnu)[0];
  return {val};
}

BoundaryField reduce(const ReducerContext& ctx, int k, const BoundaryField& u,
                     const BoundaryField& dnu) {
  if (k != 2 && k != 3)
    throw UnsupportedError(
        "normal-derivative reduction is implemented for orders 2 and 3 only");
  if (ctx.grid.frame().is_point())
    return k == 2 ? reduce_point_k2(ctx, u, dnu) : reduce_point_k3(ctx, u, dnu);
  if (ctx.grid.periodic())
    return k == 2 ? reduce_curv_k2(ctx, u, dnu) : reduce_curv_k3(ctx, u, dnu);
  return k == 2 ? reduce_rect_k2(ctx, u, dnu) : reduce_rect_k3(ctx, u, dnu);
}

}  // namespace bpx
