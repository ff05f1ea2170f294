#pragma once

#include <stdexcept>
#include <string>

namespace gc {

// Base class for everything this library throws on purpose. The CLI maps
// these to exit code 2; anything else escaping main is a bug.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input files (PNM, graph files, trimaps, configs).
struct FormatError : Error {
  using Error::Error;
};

// Geometric input that cannot be triangulated or measured: duplicate or
// collinear point sets, zero-area triangles, polygons with < 3 vertices.
struct DegenerateInputError : Error {
  using Error::Error;
};

// Linear solver failed to reach the requested tolerance.
struct SolverError : Error {
  SolverError(const std::string& what, int iterations, double residual)
      : Error(what), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

// Picard iteration for an implicit step did not settle.
struct PicardError : Error {
  PicardError(const std::string& what, int iterations, double movement)
      : Error(what), iterations(iterations), movement(movement) {}
  int iterations;
  double movement;
};

// Histogram training with an empty sample set.
struct TrainingError : Error {
  using Error::Error;
};

// Metric requested over an empty evaluation region.
struct MetricError : Error {
  using Error::Error;
};

// Query point outside the triangulated domain.
struct OutOfDomainError : Error {
  using Error::Error;
};

}  // namespace gc
