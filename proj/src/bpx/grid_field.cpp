// SPDX-License-Identifier: MIT

/// @file grid_field.cpp

#include "bpx/grid_field.hpp"

#include <cmath>
#include <cstddef>

namespace bpx {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_min_nodes(int n) {
  if (n < 8) throw GridError("grids need at least 8 nodes per direction");
}
}  // namespace

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

GridField GridField::interval(double a, double b, int n_nodes) {
  require_min_nodes(n_nodes);
  if (!(a < b)) throw GridError("interval grid needs a < b");
  GridField f;
  f.kind_ = GridKind::Interval;
  f.x0_ = a;
  f.x1_ = b;
  f.n_ = n_nodes;
  f.dx0_ = (b - a) / (n_nodes - 1);
  f.values_.assign(static_cast<std::size_t>(n_nodes), 0.0);
  return f;
}

GridField GridField::interval_two_region(double a, double x_if, double b,
                                         int n_minus, int n_plus) {
  require_min_nodes(n_minus);
  require_min_nodes(n_plus);
  if (!(a < x_if && x_if < b))
    throw GridError("interface must lie inside the interval");
  GridField f;
  f.kind_ = GridKind::Interval;
  f.x0_ = a;
  f.x1_ = b;
  f.if_pos_ = x_if;
  f.n_minus_ = n_minus;
  f.n_ = n_minus + n_plus;
  f.dx0_ = (x_if - a) / (n_minus - 1);
  f.dx1_ = (b - x_if) / (n_plus - 1);
  f.values_.assign(static_cast<std::size_t>(f.n_), 0.0);
  return f;
}

GridField GridField::radial(double r0, double r1, int n_nodes) {
  require_min_nodes(n_nodes);
  if (!(0.0 <= r0 && r0 < r1)) throw GridError("radial grid needs 0 <= r0 < r1");
  GridField f;
  f.kind_ = GridKind::Radial;
  f.x0_ = r0;
  f.x1_ = r1;
  f.n_ = n_nodes;
  f.dx0_ = (r1 - r0) / (n_nodes - 1);
  f.values_.assign(static_cast<std::size_t>(n_nodes), 0.0);
  return f;
}

GridField GridField::radial_two_region(double r_if, double r1, int n_minus,
                                       int n_plus) {
  require_min_nodes(n_minus);
  require_min_nodes(n_plus);
  if (!(0.0 < r_if && r_if < r1))
    throw GridError("interface radius must satisfy 0 < r_if < r1");
  GridField f;
  f.kind_ = GridKind::Radial;
  f.x0_ = 0.0;
  f.x1_ = r1;
  f.if_pos_ = r_if;
  f.n_minus_ = n_minus;
  f.n_ = n_minus + n_plus;
  f.dx0_ = r_if / (n_minus - 1);
  f.dx1_ = (r1 - r_if) / (n_plus - 1);
  f.values_.assign(static_cast<std::size_t>(f.n_), 0.0);
  return f;
}

GridField GridField::rectangle(double length_x, double length_y, int nx,
                               int ny) {
  require_min_nodes(nx + 1);
  require_min_nodes(ny + 1);
  GridField f;
  f.kind_ = GridKind::Rectangle;
  f.x1_ = length_x;
  f.y1_ = length_y;
  f.nx_ = nx;
  f.ny_ = ny;
  f.dx0_ = length_x / nx;
  f.dy_ = length_y / ny;
  f.values_.assign(static_cast<std::size_t>((nx + 1) * (ny + 1)), 0.0);
  return f;
}

GridField GridField::polar(double radius, int nr, int ntheta) {
  require_min_nodes(nr + 1);
  require_min_nodes(ntheta);
  GridField f;
  f.kind_ = GridKind::Polar;
  f.x1_ = radius;
  f.nx_ = nr;
  f.ny_ = ntheta;
  f.dx0_ = radius / nr;
  f.dy_ = kTwoPi / ntheta;
  f.values_.assign(static_cast<std::size_t>((nr + 1) * ntheta), 0.0);
  return f;
}

// ---------------------------------------------------------------------------
// Layout accessors
// ---------------------------------------------------------------------------

double GridField::interface_pos() const {
  if (!two_region()) throw GridError("field has no interface");
  return if_pos_;
}

double GridField::coord1d(int i) const {
  if (kind_ != GridKind::Interval && kind_ != GridKind::Radial)
    throw GridError("coord1d on a 2D field");
  if (!two_region()) return x0_ + i * dx0_;
  if (i < n_minus_) return x0_ + i * dx0_;
  return if_pos_ + (i - n_minus_) * dx1_;
}

double GridField::dx() const {
  if (two_region()) throw GridError("two-region field has per-region spacing");
  return dx0_;
}

double GridField::at(int i, int j) const {
  return values_[static_cast<std::size_t>(i + j * (nx_ + 1))];
}

double& GridField::at(int i, int j) {
  return values_[static_cast<std::size_t>(i + j * (nx_ + 1))];
}

Point GridField::node(int i, int j) const { return {i * dx0_, j * dy_}; }

double GridField::at_polar(int ring, int angle) const {
  return values_[static_cast<std::size_t>(ring * ny_ + angle)];
}

double& GridField::at_polar(int ring, int angle) {
  return values_[static_cast<std::size_t>(ring * ny_ + angle)];
}

Point GridField::location(int i) const {
  switch (kind_) {
    case GridKind::Interval:
    case GridKind::Radial:
      return {coord1d(i), 0.0};
    case GridKind::Rectangle: {
      int ix = i % (nx_ + 1), iy = i / (nx_ + 1);
      return {ix * dx0_, iy * dy_};
    }
    case GridKind::Polar: {
      int ring = i / ny_, angle = i % ny_;
      double r = ring * dx0_, th = angle * dy_;
      return {r * std::cos(th), r * std::sin(th)};
    }
  }
  throw GridError("unreachable grid kind");
}

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

void GridField::axpy(double s, const GridField& other) {
  if (kind_ != other.kind_ || values_.size() != other.values_.size() ||
      nx_ != other.nx_ || ny_ != other.ny_ || n_minus_ != other.n_minus_)
    throw GridError("axpy on mismatched grids");
  for (std::size_t i = 0; i < values_.size(); ++i)
    values_[i] += s * other.values_[i];
}

void GridField::fill(double v) {
  for (double& x : values_) x = v;
}

GridField GridField::like_zero() const {
  GridField f = *this;
  f.fill(0.0);
  return f;
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

BoundaryField GridField::trace(SegmentId segment) const {
  switch (kind_) {
    case GridKind::Interval:
      if (segment == SegmentId::IntervalLeft) return {values_.front()};
      if (segment == SegmentId::IntervalRight) return {values_.back()};
      throw GridError("interval fields only have endpoint traces");
    case GridKind::Radial:
      if (segment == SegmentId::Circle || segment == SegmentId::AnnulusOuter)
        return {values_.back()};
      if (segment == SegmentId::AnnulusInner) return {values_.front()};
      throw GridError("radial fields trace onto circles only");
    case GridKind::Rectangle: {
      BoundaryField out;
      switch (segment) {
        case SegmentId::RectRight:
          out.reserve(static_cast<std::size_t>(ny_ + 1));
          for (int j = 0; j <= ny_; ++j) out.push_back(at(nx_, j));
          return out;
        case SegmentId::RectLeft:
          for (int j = 0; j <= ny_; ++j) out.push_back(at(0, j));
          return out;
        case SegmentId::RectBottom:
          for (int i = 0; i <= nx_; ++i) out.push_back(at(i, 0));
          return out;
        case SegmentId::RectTop:
          for (int i = 0; i <= nx_; ++i) out.push_back(at(i, ny_));
          return out;
        default:
          throw GridError("rectangle fields trace onto edges only");
      }
    }
    case GridKind::Polar: {
      if (segment != SegmentId::Circle && segment != SegmentId::AnnulusOuter)
        throw GridError("polar fields trace onto the outer circle only");
      BoundaryField out(static_cast<std::size_t>(ny_));
      for (int j = 0; j < ny_; ++j) out[static_cast<std::size_t>(j)] =
          at_polar(nx_, j);
      return out;
    }
  }
  throw GridError("unreachable grid kind");
}

BoundaryField GridField::normal_derivative(SegmentId segment,
                                           int order) const {
  const std::vector<double>& w = stencil::one_sided_d1_weights(order);
  const int m = static_cast<int>(w.size());

  // d/d(inward) at the boundary node; outward normal derivative is its
  // negative.
  auto inward_1d = [&](bool at_right, double h, int offset, int count) {
    if (count < m) throw GridError("too few nodes for the one-sided stencil");
    double d = 0.0;
    for (int i = 0; i < m; ++i) {
      int idx = at_right ? offset + count - 1 - i : offset + i;
      d += w[static_cast<std::size_t>(i)] *
           values_[static_cast<std::size_t>(idx)];
    }
    return d / h;
  };

  switch (kind_) {
    case GridKind::Interval:
    case GridKind::Radial: {
      const bool tr = two_region();
      if (segment == SegmentId::IntervalLeft ||
          segment == SegmentId::AnnulusInner) {
        if (kind_ == GridKind::Radial && x0_ == 0.0 && segment == SegmentId::AnnulusInner)
          throw GridError("disk fields have no inner circle");
        return {-inward_1d(false, dx0_, 0, tr ? n_minus_ : n_)};
      }
      if (segment == SegmentId::IntervalRight ||
          segment == SegmentId::Circle || segment == SegmentId::AnnulusOuter) {
        int off = tr ? n_minus_ : 0;
        int cnt = tr ? n_ - n_minus_ : n_;
        double h = tr ? dx1_ : dx0_;
        return {-inward_1d(true, h, off, cnt)};
      }
      throw GridError("unsupported trace segment for a 1D field");
    }
    case GridKind::Rectangle: {
      BoundaryField out;
      auto sample_line = [&](auto value_at, int count, double h) {
        // value_at(k, depth): the node 'depth' steps inward from boundary
        // node k.
        for (int k = 0; k < count; ++k) {
          double d = 0.0;
          for (int i = 0; i < m; ++i)
            d += w[static_cast<std::size_t>(i)] * value_at(k, i);
          out.push_back(-d / h);
        }
      };
      switch (segment) {
        case SegmentId::RectRight:
          if (nx_ + 1 < m) throw GridError("too few nodes for the stencil");
          sample_line([&](int j, int i) { return at(nx_ - i, j); }, ny_ + 1,
                      dx0_);
          return out;
        case SegmentId::RectLeft:
          sample_line([&](int j, int i) { return at(i, j); }, ny_ + 1, dx0_);
          return out;
        case SegmentId::RectBottom:
          sample_line([&](int i_, int i) { return at(i_, i); }, nx_ + 1, dy_);
          return out;
        case SegmentId::RectTop:
          sample_line([&](int i_, int i) { return at(i_, ny_ - i); }, nx_ + 1,
                      dy_);
          return out;
        default:
          throw GridError("rectangle normal derivative needs an edge");
      }
    }
    case GridKind::Polar: {
      if (segment != SegmentId::Circle && segment != SegmentId::AnnulusOuter)
        throw GridError("polar normal derivative is on the outer circle");
      if (nx_ + 1 < m) throw GridError("too few rings for the stencil");
      BoundaryField out(static_cast<std::size_t>(ny_));
      for (int j = 0; j < ny_; ++j) {
        double d = 0.0;
        for (int i = 0; i < m; ++i)
          d += w[static_cast<std::size_t>(i)] * at_polar(nx_ - i, j);
        out[static_cast<std::size_t>(j)] = -d / dx0_;
      }
      return out;
    }
  }
  throw GridError("unreachable grid kind");
}

double GridField::interface_value(Side side) const {
  if (!two_region()) throw GridError("field has no interface");
  return side == Side::Minus
             ? values_[static_cast<std::size_t>(n_minus_ - 1)]
             : values_[static_cast<std::size_t>(n_minus_)];
}

double GridField::interface_derivative(Side side, int order) const {
  if (!two_region()) throw GridError("field has no interface");
  const std::vector<double>& w = stencil::one_sided_d1_weights(order);
  const int m = static_cast<int>(w.size());
  double d = 0.0;
  if (side == Side::Minus) {
    if (n_minus_ < m) throw GridError("too few nodes for the stencil");
    // nodes marching from the interface into the minus region (direction -x)
    for (int i = 0; i < m; ++i)
      d += w[static_cast<std::size_t>(i)] *
           values_[static_cast<std::size_t>(n_minus_ - 1 - i)];
    return -d / dx0_;  // flip: we want d/d(+x)
  }
  if (n_ - n_minus_ < m) throw GridError("too few nodes for the stencil");
  for (int i = 0; i < m; ++i)
    d += w[static_cast<std::size_t>(i)] *
         values_[static_cast<std::size_t>(n_minus_ + i)];
  return d / dx1_;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

double GridField::quad_weight(int i) const {
  auto trap1d = [](int idx, int count, double h) {
    return (idx == 0 || idx == count - 1) ? 0.5 * h : h;
  };
  switch (kind_) {
    case GridKind::Interval: {
      if (!two_region()) return trap1d(i, n_, dx0_);
      if (i < n_minus_) return trap1d(i, n_minus_, dx0_);
      return trap1d(i - n_minus_, n_ - n_minus_, dx1_);
    }
    case GridKind::Radial: {
      // area element 2*pi*r dr
      double r = coord1d(i);
      double w;
      if (!two_region())
        w = trap1d(i, n_, dx0_);
      else if (i < n_minus_)
        w = trap1d(i, n_minus_, dx0_);
      else
        w = trap1d(i - n_minus_, n_ - n_minus_, dx1_);
      return kTwoPi * r * w;
    }
    case GridKind::Rectangle: {
      int ix = i % (nx_ + 1), iy = i / (nx_ + 1);
      return trap1d(ix, nx_ + 1, dx0_) * trap1d(iy, ny_ + 1, dy_);
    }
    case GridKind::Polar: {
      int ring = i / ny_;
      double r = ring * dx0_;
      return r * trap1d(ring, nx_ + 1, dx0_) * dy_;
    }
  }
  throw GridError("unreachable grid kind");
}

// ---------------------------------------------------------------------------
// Fourier helpers
// ---------------------------------------------------------------------------

namespace fourier {

double Modes::eval(double theta) const {
  double v = cos_coeff.empty() ? 0.0 : cos_coeff[0];
  for (int k = 1; k <= max_k; ++k)
    v += cos_coeff[static_cast<std::size_t>(k)] * std::cos(k * theta) +
         sin_coeff[static_cast<std::size_t>(k)] * std::sin(k * theta);
  return v;
}

Modes project(const std::vector<double>& samples, int max_k) {
  const int n = static_cast<int>(samples.size());
  if (max_k < 0 || 2 * max_k + 2 > n)
    throw GridError("mode cutoff too large for the angular grid");
  Modes m;
  m.max_k = max_k;
  m.cos_coeff.assign(static_cast<std::size_t>(max_k + 1), 0.0);
  m.sin_coeff.assign(static_cast<std::size_t>(max_k + 1), 0.0);
  for (int k = 0; k <= max_k; ++k) {
    double ca = 0.0, sa = 0.0;
    for (int j = 0; j < n; ++j) {
      double th = kTwoPi * j / n;
      ca += samples[static_cast<std::size_t>(j)] * std::cos(k * th);
      sa += samples[static_cast<std::size_t>(j)] * std::sin(k * th);
    }
    m.cos_coeff[static_cast<std::size_t>(k)] =
        (k == 0 ? ca / n : 2.0 * ca / n);
    if (k > 0) m.sin_coeff[static_cast<std::size_t>(k)] = 2.0 * sa / n;
  }
  return m;
}

}  // namespace fourier

}  // namespace bpx
