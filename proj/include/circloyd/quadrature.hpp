#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "circloyd/angle.hpp"

namespace circloyd {

// 64-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};

const GaussLegendreRule& gauss_legendre_64();

// Maximum panel length; intervals are subdivided so each panel is at most this long.
inline constexpr double kMaxPanelLength = kPi / 8.0;

/// Integrates f over [lo, hi] with fixed-order Gauss-Legendre panels.
template <class F>
double integrate_interval(double lo, double hi, F&& f) {
  const GaussLegendreRule& rule = gauss_legendre_64();
  const double len = hi - lo;
  if (len <= 0.0) return 0.0;
  const int panels = static_cast<int>(std::ceil(len / kMaxPanelLength));
  const double h = len / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    const double mid = a + 0.5 * h;
    const double half = 0.5 * h;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights(i) * f(mid + half * rule.nodes(i));
    }
    total += half * acc;
  }
  return total;
}

/// Integrates f over the forward arc of the given length starting at `start`,
/// splitting at the 0/2pi seam so f always sees canonical angles in [0, 2*pi].
template <class F>
double integrate_arc(double start, double length, F&& f) {
  const double a = wrap_2pi(start);
  if (a + length <= kTwoPi) {
    return integrate_interval(a, a + length, f);
  }
  return integrate_interval(a, kTwoPi, f) + integrate_interval(0.0, a + length - kTwoPi, f);
}

}  // namespace circloyd
