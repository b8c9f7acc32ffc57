// SPDX-License-Identifier: MIT

/// @file test_ilw.cpp
/// @brief Normal-derivative reducers: printed-formula hand values, analytic
///        differentiation oracles, linearity, and error guards.

#include <cmath>
#include <vector>

#include "doctest.h"

#include "bpx/ilw.hpp"

using namespace bpx;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

ReducerContext edge_ctx(int n, double length_y = 1.0) {
  return ReducerContext{
      BoundaryGrid(CurvilinearFrame::rect_right_edge(1.0, length_y), n),
      {}, {}, {}, {}, {}, {}, {}};
}

ReducerContext circle_ctx(int n, double radius = 1.0) {
  return ReducerContext{BoundaryGrid(CurvilinearFrame::circle(radius), n),
                        {}, {}, {}, {}, {}, {}, {}};
}

ReducerContext endpoint_ctx(double x, int sign) {
  return ReducerContext{
      BoundaryGrid(CurvilinearFrame::interval_endpoint(x, sign), 1),
      {}, {}, {}, {}, {}, {}, {}};
}

double max_abs_diff(const BoundaryField& a, const BoundaryField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rectangle edge
// ---------------------------------------------------------------------------

TEST_CASE("edge k=2: zero trace with constant rhs gives -phi/sigma") {
  auto ctx = edge_ctx(17);
  ctx.sigma = {2.0};
  ctx.c = {5.0};
  ctx.phi = {3.0};
  BoundaryField zero(17, 0.0);
  auto out = reduce_rect_k2(ctx, zero, zero);
  for (double v : out) CHECK(v == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("edge reducers: zero data in, zero out") {
  auto ctx = edge_ctx(9);
  ctx.sigma = {1.0};
  ctx.dn_phi = {0.0};
  BoundaryField zero(9, 0.0);
  for (double v : reduce_rect_k2(ctx, zero, zero)) CHECK(v == 0.0);
  for (double v : reduce_rect_k3(ctx, zero, zero)) CHECK(v == 0.0);
}

TEST_CASE("edge k=2/k=3 match the analytic derivatives of sin x sin y") {
  // w = sin x sin y solves -lap w = 2 w; on the edge x = 1 the reducers must
  // return d2w/dx2 = -sin(1) sin(y) and d3w/dx3 = -cos(1) sin(y) up to the
  // tangential stencil error (second order).
  auto err = [&](int n) {
    auto ctx = edge_ctx(n);
    ctx.sigma = {1.0};
    BoundaryGrid grid = ctx.grid;
    BoundaryField u(static_cast<std::size_t>(n)), dnu = u, phi = u, dnphi = u;
    for (int j = 0; j < n; ++j) {
      double y = grid.param(j);
      u[static_cast<std::size_t>(j)] = std::sin(1.0) * std::sin(y);
      dnu[static_cast<std::size_t>(j)] = std::cos(1.0) * std::sin(y);
      phi[static_cast<std::size_t>(j)] = 2.0 * std::sin(1.0) * std::sin(y);
      dnphi[static_cast<std::size_t>(j)] = 2.0 * std::cos(1.0) * std::sin(y);
    }
    ctx.phi = phi;
    ctx.dn_phi = dnphi;
    auto d2 = reduce_rect_k2(ctx, u, dnu);
    auto d3 = reduce_rect_k3(ctx, u, dnu);
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
      double y = grid.param(j);
      e = std::max(e, std::abs(d2[static_cast<std::size_t>(j)] +
                               std::sin(1.0) * std::sin(y)));
      e = std::max(e, std::abs(d3[static_cast<std::size_t>(j)] +
                               std::cos(1.0) * std::sin(y)));
    }
    return e;
  };
  double e1 = err(33), e2 = err(65);
  CHECK(std::log2(e1 / e2) > 1.8);
  CHECK(e2 < 1e-3);
}

TEST_CASE("edge k=3: quadratic tangential data is differentiated exactly") {
  // c = 0, sigma = 2, dnu = y^2, phi independent of x -> -d2(y^2)/dy2 = -2.
  const int n = 12;
  auto ctx = edge_ctx(n);
  ctx.sigma = {2.0};
  ctx.dn_phi = {0.0};
  BoundaryGrid grid = ctx.grid;
  BoundaryField u(static_cast<std::size_t>(n), 0.0);
  BoundaryField dnu(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double y = grid.param(j);
    dnu[static_cast<std::size_t>(j)] = y * y;
  }
  auto out = reduce_rect_k3(ctx, u, dnu);
  for (double v : out) CHECK(v == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("edge k=3 without the rhs normal derivative is a data error") {
  auto ctx = edge_ctx(9);
  ctx.sigma = {1.0};
  BoundaryField zero(9, 0.0);
  CHECK_THROWS_AS(reduce_rect_k3(ctx, zero, zero), DataError);
}

// ---------------------------------------------------------------------------
// Closed curves
// ---------------------------------------------------------------------------

TEST_CASE("circle k=2: radial hand value -f/sigma - kappa dnu") {
  // Disk(1), sigma = 1, f = 4, u_0 = 1 - r^2: trace 0, dnu = -2, kappa = 1.
  const int n = 16;
  auto ctx = circle_ctx(n);
  ctx.sigma = {1.0};
  ctx.phi = {4.0};
  BoundaryField u(n, 0.0), dnu(n, -2.0);
  auto out = reduce_curv_k2(ctx, u, dnu);
  for (double v : out) CHECK(v == doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("circle k=2: zero boundary trace leaves -phi/sigma - kappa dnu") {
  const int n = 32;
  const double R = 2.0;  // kappa = 1/2
  auto ctx = circle_ctx(n, R);
  ctx.sigma = {2.0};
  BoundaryGrid grid = ctx.grid;
  BoundaryField u(n, 0.0), dnu(n), phi(n);
  for (int j = 0; j < n; ++j) {
    double t = grid.param(j);
    dnu[static_cast<std::size_t>(j)] = std::sin(t);
    phi[static_cast<std::size_t>(j)] = std::cos(t);
  }
  ctx.phi = phi;
  auto out = reduce_curv_k2(ctx, u, dnu);
  for (int j = 0; j < n; ++j) {
    double t = grid.param(j);
    CHECK(out[static_cast<std::size_t>(j)] ==
          doctest::Approx(-0.5 * std::cos(t) - 0.5 * std::sin(t))
              .epsilon(1e-12));
  }
}

TEST_CASE("circle reducers: zero data in, zero out") {
  auto ctx = circle_ctx(16);
  ctx.sigma = {1.0};
  ctx.dn_phi = {0.0};
  BoundaryField zero(16, 0.0);
  for (double v : reduce_curv_k2(ctx, zero, zero)) CHECK(v == 0.0);
  for (double v : reduce_curv_k3(ctx, zero, zero)) CHECK(v == 0.0);
}

namespace {

/// Consistency data for w = x^3 + y^3 on the unit circle with L = -lap.
struct CubicTraces {
  BoundaryField u, dnu, phi, dnphi, d2_exact, d3_exact;
};

CubicTraces cubic_traces(const BoundaryGrid& grid) {
  CubicTraces tr;
  const int n = grid.size();
  for (int j = 0; j < n; ++j) {
    double t = grid.param(j);
    double cs = std::cos(t), sn = std::sin(t);
    double c3 = cs * cs * cs, s3 = sn * sn * sn;
    tr.u.push_back(c3 + s3);
    tr.dnu.push_back(3.0 * (c3 + s3));
    tr.phi.push_back(-6.0 * (cs + sn));   // phi = -lap w
    tr.dnphi.push_back(-6.0 * (cs + sn)); // d/dr of -6r(cos+sin)
    tr.d2_exact.push_back(6.0 * (c3 + s3));
    tr.d3_exact.push_back(6.0 * (c3 + s3));
  }
  return tr;
}

}  // namespace

TEST_CASE("circle k=2/k=3 converge to the analytic radial derivatives") {
  auto err = [&](int n) {
    auto ctx = circle_ctx(n);
    ctx.sigma = {1.0};
    auto tr = cubic_traces(ctx.grid);
    ctx.phi = tr.phi;
    ctx.dn_phi = tr.dnphi;
    auto d2 = reduce_curv_k2(ctx, tr.u, tr.dnu);
    auto d3 = reduce_curv_k3(ctx, tr.u, tr.dnu);
    return std::max(max_abs_diff(d2, tr.d2_exact),
                    max_abs_diff(d3, tr.d3_exact));
  };
  double e1 = err(32), e2 = err(64);
  CHECK(std::log2(e1 / e2) > 3.5);
  CHECK(e2 < 1e-3);
}

TEST_CASE("circle k=3: radial hand value 2 kappa^2 dnu + kappa phi / sigma") {
  // Disk(1), sigma=1, u=0, dnu=-2, phi=4, dn_phi=0: third radial derivative
  // of 1 - r^2 vanishes.
  const int n = 16;
  auto ctx = circle_ctx(n);
  ctx.sigma = {1.0};
  ctx.phi = {4.0};
  ctx.dn_phi = {0.0};
  BoundaryField u(n, 0.0), dnu(n, -2.0);
  auto out = reduce_curv_k3(ctx, u, dnu);
  for (double v : out) CHECK(v == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("circle k=3: tangential cosine trace gives 3 kappa d2u/ds2") {
  const int n = 128;
  auto ctx = circle_ctx(n);
  ctx.sigma = {1.0};
  ctx.dn_phi = {0.0};
  BoundaryGrid grid = ctx.grid;
  BoundaryField u(n), dnu(n, 0.0);
  for (int j = 0; j < n; ++j)
    u[static_cast<std::size_t>(j)] = std::cos(2.0 * grid.param(j));
  auto out = reduce_curv_k3(ctx, u, dnu);
  for (int j = 0; j < n; ++j)
    CHECK(std::abs(out[static_cast<std::size_t>(j)] +
                   12.0 * std::cos(2.0 * grid.param(j))) < 1e-4);
}

TEST_CASE("circle k=3 rejects variable sigma; both reject a reaction term") {
  const int n = 16;
  auto ctx = circle_ctx(n);
  BoundaryField sig(n);
  for (int j = 0; j < n; ++j)
    sig[static_cast<std::size_t>(j)] = 1.0 + 0.1 * j;
  ctx.sigma = sig;
  ctx.dn_phi = {0.0};
  BoundaryField zero(n, 0.0);
  CHECK_THROWS_AS(reduce_curv_k3(ctx, zero, zero), UnsupportedError);

  auto ctx2 = circle_ctx(n);
  ctx2.sigma = {1.0};
  ctx2.c = {0.5};
  CHECK_THROWS_AS(reduce_curv_k2(ctx2, zero, zero), UnsupportedError);
}

// ---------------------------------------------------------------------------
// Interval endpoints
// ---------------------------------------------------------------------------

TEST_CASE("endpoint reducers: hand values") {
  auto ctx = endpoint_ctx(1.0, +1);
  ctx.sigma = {2.0};
  ctx.c = {2.0};
  ctx.phi = {1.0};
  ctx.dn_phi = {0.5};
  auto d2 = reduce_point_k2(ctx, {3.0}, {4.0});
  CHECK(d2[0] == doctest::Approx(2.5).epsilon(1e-14));  // (2*3 - 1)/2
  auto d3 = reduce_point_k3(ctx, {3.0}, {4.0});
  CHECK(d3[0] == doctest::Approx(3.75).epsilon(1e-14));  // (2*4 - 0.5)/2
}

TEST_CASE("endpoint k=2: the u'' = 2 model at both ends") {
  // a = 1, c = 0, f = -2: second derivative is 2 regardless of orientation.
  for (int sign : {+1, -1}) {
    auto ctx = endpoint_ctx(sign > 0 ? 1.0 : 0.0, sign);
    ctx.sigma = {1.0};
    ctx.phi = {-2.0};
    auto d2 = reduce_point_k2(ctx, {0.0}, {1.0});
    CHECK(d2[0] == doctest::Approx(2.0).epsilon(1e-14));
  }
}

// ---------------------------------------------------------------------------
// Shared properties
// ---------------------------------------------------------------------------

TEST_CASE("reducers are jointly linear in traces and rhs") {
  const int n = 32;
  BoundaryGrid grid(CurvilinearFrame::circle(1.0), n);
  BoundaryField u1(n), u2(n), d1(n), d2f(n), p1(n), p2(n);
  for (int j = 0; j < n; ++j) {
    double t = grid.param(j);
    u1[j] = std::sin(t);
    u2[j] = std::cos(3.0 * t);
    d1[j] = 0.3 * std::cos(t);
    d2f[j] = std::sin(2.0 * t);
    p1[j] = 1.0 + std::cos(t);
    p2[j] = std::sin(5.0 * t);
  }
  auto make = [&](BoundaryField phi) {
    ReducerContext ctx{grid, {1.0}, {}, {}, {}, {}, std::move(phi), {0.0}};
    return ctx;
  };
  auto sum = [](const BoundaryField& a, const BoundaryField& b) {
    BoundaryField s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return s;
  };
  for (int k : {2, 3}) {
    auto fa = reduce(make(p1), k, u1, d1);
    auto fb = reduce(make(p2), k, u2, d2f);
    auto fab = reduce(make(sum(p1, p2)), k, sum(u1, u2), sum(d1, d2f));
    CHECK(max_abs_diff(fab, sum(fa, fb)) < 1e-12);
  }
}

TEST_CASE("reducers are homogeneous of degree one") {
  const int n = 32;
  const double scale = 3.0;
  BoundaryGrid grid(CurvilinearFrame::circle(1.0), n);
  BoundaryField u(n), dn(n), phi(n), su(n), sdn(n), sphi(n);
  for (int j = 0; j < n; ++j) {
    double t = grid.param(j);
    u[j] = std::sin(t) + 0.2;
    dn[j] = std::cos(2.0 * t);
    phi[j] = 0.7 * std::sin(3.0 * t);
    su[j] = scale * u[j];
    sdn[j] = scale * dn[j];
    sphi[j] = scale * phi[j];
  }
  for (int k : {2, 3}) {
    ReducerContext ctx{grid, {1.0}, {}, {}, {}, {}, phi, {0.0}};
    ReducerContext sctx{grid, {1.0}, {}, {}, {}, {}, sphi, {0.0}};
    auto f = reduce(ctx, k, u, dn);
    auto sf = reduce(sctx, k, su, sdn);
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(sf[j] - scale * f[j]) < 1e-12);
  }
}

TEST_CASE("dispatch and guards") {
  auto ctx = circle_ctx(16);
  ctx.sigma = {1.0};
  BoundaryField zero(16, 0.0);
  CHECK_THROWS_AS(reduce(ctx, 4, zero, zero), UnsupportedError);
  CHECK_THROWS_AS(reduce(ctx, 1, zero, zero), UnsupportedError);

  BoundaryField wrong(7, 0.0);
  CHECK_THROWS_AS(reduce_curv_k2(ctx, wrong, zero), GridError);

  auto bad = circle_ctx(16);
  bad.sigma = {-1.0};
  CHECK_THROWS_AS(reduce_curv_k2(bad, zero, zero), EllipticityError);

  // Geometry mismatches.
  auto edge = edge_ctx(9);
  edge.sigma = {1.0};
  BoundaryField z9(9, 0.0);
  CHECK_THROWS_AS(reduce_curv_k2(edge, z9, z9), GridError);
  CHECK_THROWS_AS(reduce_rect_k2(ctx, zero, zero), GridError);
}
