#include "circloyd/quadrature.hpp"

#include <cmath>

namespace circloyd {

namespace {

// Legendre nodes by Newton iteration from the Chebyshev-like initial guess.
GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  // pin the constant-integrand sum to the exact value
  rule.weights *= 2.0 / rule.weights.sum();
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_64() {
  static const GaussLegendreRule rule = build_rule(64);
  return rule;
}

}  // namespace circloyd
