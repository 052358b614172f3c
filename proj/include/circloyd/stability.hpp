#pragma once

#include <functional>
#include <string>

#include "circloyd/density.hpp"

namespace circloyd {

/// Fourier mode with the most negative eigenvalue: n/2 for even n, floor(n/2)
/// for odd n.
int m_star(int n);

/// Instability threshold for F: 2 / (1 - cos(2 pi m*/n)). Equals 1 for even n.
double flip_bound(int n);

/// Stability functional F = (pi/(n M)) h(pi/n) with M the mass of the cell
/// (-pi/n, pi/n) for the recentered density. Equals 2*beta of the circulant
/// Jacobian and is invariant under density rescaling.
double stability_functional_F(int n, const DensityModel& h);

enum class Verdict { stable, marginal, unstable };

const char* to_string(Verdict v);

struct StabilityReport {
  int n = 0;
  double kappa = 0.0;
  double F = 0.0;
  double bound = 0.0;
  int m_star = 0;
  double lambda_min = 0.0;
  Verdict verdict = Verdict::stable;
  double margin = 0.0;  // bound - F
};

/// Classifies the symmetric fixed point: stable iff F < bound, with a 1e-12
/// band around equality mapped to marginal.
StabilityReport classify(int n, const DensityModel& h);

/// Classification from a given F value (synthetic densities, boundary tests).
StabilityReport classify_from_F(int n, double F, double kappa = 0.0);

struct CriticalKappaResult {
  bool found = false;
  double kappa_c = 0.0;  // valid when found
  double max_F = 0.0;    // largest F seen on the scan grid
};

inline constexpr int kCriticalScanPoints = 256;

/// Scans F(kappa) - flip_bound(n) on a 256-point grid over [kappa_min,
/// kappa_max]; a sign change is refined by bisection to `tol`.
CriticalKappaResult critical_kappa(int n, double kappa_min, double kappa_max, double tol,
                                   const std::function<double(double)>& f_of_kappa);

/// Same, for the von Mises family (recentered, mu = 0).
CriticalKappaResult critical_kappa(int n, double kappa_min, double kappa_max, double tol);

}  // namespace circloyd
