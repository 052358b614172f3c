#include "circloyd/density.hpp"

#include <cmath>

#include "circloyd/quadrature.hpp"

namespace circloyd {

namespace {

void require_kappa(double kappa, const char* who) {
  if (!std::isfinite(kappa) || kappa < 0.0 || kappa > kKappaMax) {
    throw std::domain_error(std::string(who) + ": kappa outside [0, 700]");
  }
}

// Visits every quadrature node of the forward arc, splitting at the 0/2pi
// seam; fn(theta, weight) with theta in canonical coordinates.
template <class Fn>
void for_each_node(double start, double length, Fn&& fn) {
  const GaussLegendreRule& rule = gauss_legendre_64();
  auto piece = [&](double lo, double hi) {
    const double len = hi - lo;
    if (len <= 0.0) return;
    const int panels = static_cast<int>(std::ceil(len / kMaxPanelLength));
    const double h = len / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * h;
      const double half = 0.5 * h;
      for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        fn(mid + half * rule.nodes(i), half * rule.weights(i));
      }
    }
  };
  const double a = wrap_2pi(start);
  if (a + length <= kTwoPi) {
    piece(a, a + length);
  } else {
    piece(a, kTwoPi);
    piece(0.0, a + length - kTwoPi);
  }
}

void require_moment_arc(double length, double a, double center) {
  if (length >= kPi + kArcGuardSlack) {
    throw CellTooLargeError("arc length >= pi: intrinsic centroid undefined");
  }
  const double rel = wrap_2pi(center) == wrap_2pi(a) ? 0.0 : forward_arc_length(a, center);
  if (rel > length + 1e-9 && kTwoPi - rel > 1e-9) {
    throw std::domain_error("moment center outside the arc");
  }
}

}  // namespace

double bessel_i0(double kappa) {
  require_kappa(kappa, "bessel_i0");
  const double t = 0.25 * kappa * kappa;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 5000; ++k) {
    term *= t / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-16) break;
  }
  return sum;
}

double bessel_i1(double kappa) {
  require_kappa(kappa, "bessel_i1");
  const double half = 0.5 * kappa;
  const double t = half * half;
  double term = half;
  double sum = half;
  for (int k = 1; k < 5000; ++k) {
    term *= t / (static_cast<double>(k) * (k + 1.0));
    sum += term;
    if (term < sum * 1e-16) break;
  }
  return sum;
}

DensityModel DensityModel::uniform() { return DensityModel(0.0, 0.0, 1.0 / kTwoPi); }

DensityModel DensityModel::von_mises(double kappa, double mu) {
  require_kappa(kappa, "DensityModel::von_mises");
  return DensityModel(kappa, wrap_2pi(mu), 1.0 / (kTwoPi * bessel_i0(kappa)));
}

DensityModel DensityModel::von_mises_unnormalized(double kappa, double mu) {
  require_kappa(kappa, "DensityModel::von_mises_unnormalized");
  return DensityModel(kappa, wrap_2pi(mu), 1.0);
}

double arc_mass(const DensityModel& h, double a, double b) {
  const double length = forward_arc_length(a, b);
  double mass = 0.0;
  for_each_node(a, length, [&](double theta, double w) { mass += w * h(theta); });
  return mass;
}

double arc_local_first_moment(const DensityModel& h, double a, double b, double center) {
  const double length = forward_arc_length(a, b);
  require_moment_arc(length, a, center);
  double moment = 0.0;
  for_each_node(a, length,
                [&](double theta, double w) { moment += w * wrap_pi(theta - center) * h(theta); });
  return moment;
}

std::complex<double> arc_circular_first_moment(const DensityModel& h, double a, double b) {
  const double length = forward_arc_length(a, b);
  double re = 0.0;
  double im = 0.0;
  for_each_node(a, length, [&](double theta, double w) {
    const double hv = w * h(theta);
    re += hv * std::cos(theta);
    im += hv * std::sin(theta);
  });
  return {re, im};
}

CellMoments cell_moments(const DensityModel& h, double a, double b, double center) {
  const double length = forward_arc_length(a, b);
  require_moment_arc(length, a, center);
  CellMoments m;
  double re = 0.0;
  double im = 0.0;
  for_each_node(a, length, [&](double theta, double w) {
    const double hv = w * h(theta);
    m.mass += hv;
    m.local_first += hv * wrap_pi(theta - center);
    re += hv * std::cos(theta);
    im += hv * std::sin(theta);
  });
  m.circular_first = {re, im};
  return m;
}

}  // namespace circloyd
