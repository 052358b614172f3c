#pragma once

#include <stdexcept>
#include <string>

namespace circloyd {

// Coincident codepoints, bad ordering, or a gap below resolvable tolerance.
struct DegenerateConfigError : std::domain_error {
  using std::domain_error::domain_error;
};

// A Voronoi cell exceeded the arc-length bound required for unique geodesics.
struct CellTooLargeError : std::domain_error {
  using std::domain_error::domain_error;
};

// Extrinsic centroid undefined: first circular moment too close to zero.
struct UndefinedCentroidError : std::domain_error {
  using std::domain_error::domain_error;
};

// Orbit iteration failed partway through; `step` is the first bad iteration.
struct OrbitError : std::domain_error {
  OrbitError(int step_, const std::string& msg)
      : std::domain_error("step " + std::to_string(step_) + ": " + msg), step(step_) {}
  int step;
};

}  // namespace circloyd
