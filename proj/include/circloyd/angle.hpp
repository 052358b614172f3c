#pragma once

#include <Eigen/Dense>

#include "circloyd/errors.hpp"

namespace circloyd {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into the canonical range [0, 2*pi). Throws on non-finite input.
double wrap_2pi(double x);

/// Wraps an angular difference into [-pi, pi), computed as ((x + pi) mod 2pi) - pi.
double wrap_pi(double x);

/// Geodesic (shortest-arc) distance on the circle, in [0, pi].
double geodesic(double a, double b);

/// Length of the forward (counterclockwise) arc from a to b, in (0, 2*pi].
/// A nonzero whole-turn difference maps to 2*pi; a == b is degenerate.
double forward_arc_length(double a, double b);

/// Point on the forward arc from a to b equidistant from both endpoints.
/// b must be the cyclic successor of a; a == b is degenerate.
double circular_midpoint(double a, double b);

// Ordered configuration of n >= 2 codepoint angles, strictly increasing in [0, 2*pi).
class Configuration {
 public:
  explicit Configuration(Eigen::VectorXd angles);

  const Eigen::VectorXd& angles() const { return angles_; }
  Eigen::Index size() const { return angles_.size(); }
  double operator[](Eigen::Index j) const { return angles_(j); }

  /// Equally spaced configuration q_j = 2*pi*j/n.
  static Configuration equally_spaced(int n);

 private:
  Eigen::VectorXd angles_;
};

/// Wraps, sorts, and validates a set of angles into a Configuration.
/// Duplicates within 1e-12 (including across the 0/2pi seam) are degenerate.
Configuration sort_config(const Eigen::VectorXd& points);

/// Subtracts the arithmetic mean of the [0, 2pi) representatives, re-wraps and
/// re-sorts. Not equivariant when points straddle the seam; callers that need
/// a rotation-free orbit can skip it.
Configuration remove_drift(const Configuration& q);

/// Euclidean norm of wrapped coordinate differences, minimized over cyclic
/// relabelings of a. Both configurations must have the same size.
double config_distance(const Configuration& a, const Configuration& b);

}  // namespace circloyd
