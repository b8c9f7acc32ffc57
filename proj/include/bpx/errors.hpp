// SPDX-License-Identifier: MIT
#pragma once

/// @file errors.hpp
/// @brief Exception hierarchy shared by every module of the expansion engine.
///
/// All failures surface as subclasses of bpx::Error so callers can catch one
/// base type at the tool boundary while tests assert the precise class.

#include <stdexcept>
#include <string>

namespace bpx {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid geometric configuration: degenerate domain parameters, a layer so
/// thick the normal offset map stops being injective, or a curvature query at
/// a corner.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Mismatched or unusable discrete grids (wrong node counts, an open curve
/// passed where a closed one is required, too few nodes for a stencil).
class GridError : public Error {
 public:
  using Error::Error;
};

/// Required sampled data is missing or inconsistent with the requested
/// operation (e.g. a third-order reduction without the normal derivative of
/// the source trace).
class DataError : public Error {
 public:
  using Error::Error;
};

/// The diffusion matrix failed the symmetric-positive-definite check, or the
/// reaction coefficient is negative.
class EllipticityError : public Error {
 public:
  using Error::Error;
};

/// A boundary-value problem's conditions do not cover the whole boundary, or
/// cover a segment twice.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// A pure-Neumann problem was posed without the side condition that selects a
/// unique solution.
class CompatibilityMissing : public Error {
 public:
  using Error::Error;
};

/// The data of a pure-Neumann problem violates its solvability constraint
/// beyond tolerance.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// The requested operation lies outside the supported parameter range
/// (reduction order > 3, variable coefficients where constants are required,
/// an expansion index with no defined closure).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A discrete solve failed: singular system, iteration that did not converge,
/// or a boundary condition the discretization cannot represent.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Every error in a convergence sweep sits at or below the resolution floor,
/// so no rate can be fitted; the data is exact to resolution.
class FlooredError : public Error {
 public:
  using Error::Error;
};

/// Coefficient extraction by extrapolated differencing became ill-conditioned
/// or its cross-check disagreed beyond tolerance.
class OracleError : public Error {
 public:
  using Error::Error;
};

/// A quotient that determines an undetermined constant has a vanishing
/// denominator.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration (unknown key, missing section,
/// unparsable value).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bpx
