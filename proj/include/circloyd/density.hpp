#pragma once

#include <complex>

#include <Eigen/Dense>

#include "circloyd/angle.hpp"

namespace circloyd {

// Upper kappa limit: exp(kappa) must stay within double range.
inline constexpr double kKappaMax = 700.0;

// Cells and moment arcs may exceed pi by this much before erroring. The n = 2
// partition always has cells of length exactly pi, and finite-difference
// probes inflate them by eps/2, so the guard cannot sit at pi itself.
inline constexpr double kArcGuardSlack = 1e-6;

/// Modified Bessel function I_0 by power series, valid for kappa in [0, 700].
double bessel_i0(double kappa);

/// Modified Bessel function I_1 by power series, valid for kappa in [0, 700].
double bessel_i1(double kappa);

// Probability density on the circle: uniform or von Mises, with an explicit
// amplitude so the unnormalized form exp(kappa*cos(theta - mu)) is available.
// Every downstream ratio (N/D, F) is invariant under the amplitude.
class DensityModel {
 public:
  static DensityModel uniform();
  static DensityModel von_mises(double kappa, double mu = 0.0);
  static DensityModel von_mises_unnormalized(double kappa, double mu = 0.0);

  /// Density value at theta (probability per radian when normalized).
  double operator()(double theta) const {
    if (kappa_ == 0.0) return amplitude_;
    return amplitude_ * std::exp(kappa_ * std::cos(theta - mu_));
  }

  double kappa() const { return kappa_; }
  double mu() const { return mu_; }
  bool is_uniform() const { return kappa_ == 0.0; }

  /// Same profile with the mean direction moved to 0.
  DensityModel recentered() const { return DensityModel(kappa_, 0.0, amplitude_); }

 private:
  DensityModel(double kappa, double mu, double amplitude)
      : kappa_(kappa), mu_(mu), amplitude_(amplitude) {}

  double kappa_;
  double mu_;
  double amplitude_;
};

// Integral moments of one Voronoi cell.
struct CellMoments {
  double mass = 0.0;                          // D_j
  double local_first = 0.0;                   // N_j, about the cell's codepoint
  std::complex<double> circular_first{0, 0};  // integral of e^{i theta} h
};

/// Probability of the forward arc from a to b (length in (0, 2*pi]).
double arc_mass(const DensityModel& h, double a, double b);

/// Signed first moment about `center`: integral of wrap_pi(theta - center) * h.
/// The arc must be shorter than pi (plus guard slack) with center inside it.
double arc_local_first_moment(const DensityModel& h, double a, double b, double center);

/// Integral of e^{i theta} h(theta) over the forward arc from a to b.
std::complex<double> arc_circular_first_moment(const DensityModel& h, double a, double b);

/// All three moments of the arc in one pass over the quadrature grid.
CellMoments cell_moments(const DensityModel& h, double a, double b, double center);

}  // namespace circloyd
