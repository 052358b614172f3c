#include "circloyd/stability.hpp"

#include <cmath>
#include <stdexcept>

#include "circloyd/linearization.hpp"

namespace circloyd {

namespace {

constexpr double kMarginalBand = 1e-12;

void require_n(int n) {
  if (n < 2) throw std::domain_error("stability: need n >= 2");
}

}  // namespace

int m_star(int n) {
  require_n(n);
  return n / 2;  // floor division covers the odd case
}

double flip_bound(int n) {
  require_n(n);
  return 2.0 / (1.0 - std::cos(kTwoPi * m_star(n) / n));
}

double stability_functional_F(int n, const DensityModel& h) {
  // 2*beta reproduces the (pi/(n M)) h(pi/n) product exactly.
  return 2.0 * symmetric_jacobian(n, h).beta;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::marginal: return "marginal";
    case Verdict::unstable: return "unstable";
  }
  return "?";
}

StabilityReport classify_from_F(int n, double F, double kappa) {
  require_n(n);
  StabilityReport r;
  r.n = n;
  r.kappa = kappa;
  r.F = F;
  r.m_star = m_star(n);
  r.bound = flip_bound(n);
  r.lambda_min = 1.0 - F * (1.0 - std::cos(kTwoPi * r.m_star / n));
  r.margin = r.bound - F;
  if (std::abs(F - r.bound) <= kMarginalBand) {
    r.verdict = Verdict::marginal;
  } else if (F < r.bound) {
    r.verdict = Verdict::stable;
  } else {
    r.verdict = Verdict::unstable;
  }
  return r;
}

StabilityReport classify(int n, const DensityModel& h) {
  return classify_from_F(n, stability_functional_F(n, h), h.kappa());
}

CriticalKappaResult critical_kappa(int n, double kappa_min, double kappa_max, double tol,
                                   const std::function<double(double)>& f_of_kappa) {
  require_n(n);
  if (!(kappa_min >= 0.0 && kappa_max <= kKappaMax && kappa_min < kappa_max)) {
    throw std::domain_error("critical_kappa: bad kappa range");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("critical_kappa: tol must be positive");
  }
  const double bound = flip_bound(n);
  auto grid_point = [&](int i) {
    return kappa_min + (kappa_max - kappa_min) * i / (kCriticalScanPoints - 1);
  };

  CriticalKappaResult result;
  int cross = -1;  // first i with a sign change of F - bound on (i-1, i]
  double prev_g = 0.0;
  for (int i = 0; i < kCriticalScanPoints; ++i) {
    const double f = f_of_kappa(grid_point(i));
    result.max_F = (i == 0) ? f : std::max(result.max_F, f);
    const double g = f - bound;
    if (cross < 0 && ((i == 0 && g >= 0.0) || (i > 0 && prev_g < 0.0 && g >= 0.0) ||
                      (i > 0 && prev_g > 0.0 && g <= 0.0))) {
      cross = i;
    }
    prev_g = g;
  }
  if (cross < 0) {
    return result;
  }
  result.found = true;
  if (cross == 0) {
    result.kappa_c = kappa_min;
    return result;
  }
  double lo = grid_point(cross - 1);
  double hi = grid_point(cross);
  const bool rising = f_of_kappa(lo) < bound;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const bool below = f_of_kappa(mid) < bound;
    if (below == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.kappa_c = 0.5 * (lo + hi);
  return result;
}

CriticalKappaResult critical_kappa(int n, double kappa_min, double kappa_max, double tol) {
  return critical_kappa(n, kappa_min, kappa_max, tol, [n](double kappa) {
    return stability_functional_F(n, DensityModel::von_mises(kappa));
  });
}

}  // namespace circloyd
