// SPDX-License-Identifier: MIT

/// @file stencils.cpp

#include "bpx/stencils.hpp"

#include <cstddef>

namespace bpx::stencil {

namespace {
std::size_t wrap(std::ptrdiff_t j, std::size_t n) {
  std::ptrdiff_t m = static_cast<std::ptrdiff_t>(n);
  std::ptrdiff_t r = j % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}
}  // namespace

std::vector<double> d1_periodic4(const std::vector<double>& f, double ds) {
  const std::size_t n = f.size();
  if (n < 5) throw GridError("periodic 4th-order stencil needs >= 5 nodes");
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(j);
    out[j] = (f[wrap(i - 2, n)] - 8.0 * f[wrap(i - 1, n)] +
              8.0 * f[wrap(i + 1, n)] - f[wrap(i + 2, n)]) /
             (12.0 * ds);
  }
  return out;
}

std::vector<double> d2_periodic4(const std::vector<double>& f, double ds) {
  const std::size_t n = f.size();
  if (n < 5) throw GridError("periodic 4th-order stencil needs >= 5 nodes");
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(j);
    out[j] = (-f[wrap(i - 2, n)] + 16.0 * f[wrap(i - 1, n)] - 30.0 * f[j] +
              16.0 * f[wrap(i + 1, n)] - f[wrap(i + 2, n)]) /
             (12.0 * ds * ds);
  }
  return out;
}

std::vector<double> d1_edge2(const std::vector<double>& f, double ds) {
  const std::size_t n = f.size();
  if (n < 3) throw GridError("edge stencil needs >= 3 nodes");
  std::vector<double> out(n);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * ds);
  for (std::size_t j = 1; j + 1 < n; ++j)
    out[j] = (f[j + 1] - f[j - 1]) / (2.0 * ds);
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * ds);
  return out;
}

std::vector<double> d2_edge2(const std::vector<double>& f, double ds) {
  const std::size_t n = f.size();
  if (n < 4) throw GridError("edge second-derivative stencil needs >= 4 nodes");
  std::vector<double> out(n);
  const double ds2 = ds * ds;
  out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / ds2;
  for (std::size_t j = 1; j + 1 < n; ++j)
    out[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / ds2;
  out[n - 1] =
      (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / ds2;
  return out;
}

const std::vector<double>& one_sided_d1_weights(int order) {
  static const std::vector<double> w2 = {-3.0 / 2.0, 2.0, -1.0 / 2.0};
  static const std::vector<double> w3 = {-11.0 / 6.0, 3.0, -3.0 / 2.0,
                                         1.0 / 3.0};
  static const std::vector<double> w4 = {-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0,
                                         -1.0 / 4.0};
  switch (order) {
    case 2:
      return w2;
    case 3:
      return w3;
    case 4:
      return w4;
    default:
      throw UnsupportedError("one-sided derivative order must be 2, 3 or 4");
  }
}

}  // namespace bpx::stencil
