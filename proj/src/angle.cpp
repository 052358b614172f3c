#include "circloyd/angle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace circloyd {

namespace {

constexpr double kDuplicateTol = 1e-12;

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": non-finite angle");
  }
}

}  // namespace

double wrap_2pi(double x) {
  require_finite(x, "wrap_2pi");
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod rounding can land exactly on the seam
  return r;
}

double wrap_pi(double x) {
  require_finite(x, "wrap_pi");
  return wrap_2pi(x + kPi) - kPi;
}

double geodesic(double a, double b) {
  require_finite(a, "geodesic");
  require_finite(b, "geodesic");
  const double d = std::abs(wrap_2pi(a) - wrap_2pi(b));
  return std::min(d, kTwoPi - d);
}

double forward_arc_length(double a, double b) {
  require_finite(a, "forward_arc_length");
  require_finite(b, "forward_arc_length");
  const double d = b - a;
  double len = d - kTwoPi * std::floor(d / kTwoPi);
  if (len == 0.0) {
    if (d == 0.0) {
      throw DegenerateConfigError("forward_arc_length: zero-length arc");
    }
    len = kTwoPi;  // whole number of turns
  }
  return len;
}

double circular_midpoint(double a, double b) {
  if (a == b) {
    throw DegenerateConfigError("circular_midpoint: coincident endpoints");
  }
  const double len = forward_arc_length(wrap_2pi(a), wrap_2pi(b));
  return wrap_2pi(wrap_2pi(a) + 0.5 * len);
}

Configuration::Configuration(Eigen::VectorXd angles) : angles_(std::move(angles)) {
  const Eigen::Index n = angles_.size();
  if (n < 2) {
    throw DegenerateConfigError("configuration needs at least 2 points");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    require_finite(angles_(j), "Configuration");
    if (angles_(j) < 0.0 || angles_(j) >= kTwoPi) {
      throw DegenerateConfigError("configuration angle outside [0, 2pi)");
    }
    if (j > 0 && angles_(j) <= angles_(j - 1)) {
      throw DegenerateConfigError("configuration not strictly increasing");
    }
  }
}

Configuration Configuration::equally_spaced(int n) {
  Eigen::VectorXd a(n);
  for (int j = 0; j < n; ++j) a(j) = kTwoPi * j / n;
  return Configuration(a);
}

Configuration sort_config(const Eigen::VectorXd& points) {
  const Eigen::Index n = points.size();
  if (n < 2) {
    throw DegenerateConfigError("sort_config: need at least 2 points");
  }
  Eigen::VectorXd sorted(n);
  for (Eigen::Index j = 0; j < n; ++j) sorted(j) = wrap_2pi(points(j));
  std::sort(sorted.data(), sorted.data() + n);
  for (Eigen::Index j = 1; j < n; ++j) {
    if (sorted(j) - sorted(j - 1) <= kDuplicateTol) {
      throw DegenerateConfigError("sort_config: duplicate points");
    }
  }
  // seam duplicate: last point within tolerance of first + 2pi
  if (kTwoPi - sorted(n - 1) + sorted(0) <= kDuplicateTol) {
    throw DegenerateConfigError("sort_config: duplicate points across the seam");
  }
  return Configuration(sorted);
}

Configuration remove_drift(const Configuration& q) {
  const double mean = q.angles().mean();
  const Eigen::VectorXd shifted = (q.angles().array() - mean).matrix();
  return sort_config(shifted);
}

double config_distance(const Configuration& a, const Configuration& b) {
  const Eigen::Index n = a.size();
  if (n != b.size()) {
    throw std::invalid_argument("config_distance: size mismatch");
  }
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < n; ++r) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = wrap_pi(a[(j + r) % n] - b[j]);
      s += d * d;
    }
    best = std::min(best, s);
  }
  return std::sqrt(best);
}

}  // namespace circloyd
