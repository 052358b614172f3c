#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "circloyd/density.hpp"
#include "circloyd/lyapunov.hpp"
#include "circloyd/quantizer.hpp"
#include "circloyd/sala.hpp"
#include "circloyd/stability.hpp"

namespace circloyd {

/// Evenly spaced kappa grid with step (hi - lo)/(count - 1).
Eigen::VectorXd kappa_grid(double lo, double hi, int count);

struct SweepParams {
  double kappa_min = 0.0;
  double kappa_max = 10.0;
  int n_kappa = 20;
  int n = 8;
  int n_iter = 100;
  int n_trans = 80;
  std::uint64_t seed = 0;
  int trials = 1;
  int threads = 1;
  bool drift = true;
  CentroidMode mode = CentroidMode::intrinsic;
};

// One post-transient codepoint sample; an orbit failure for some kappa is
// recorded as a single marker row with t = j = -1 and angle = NaN.
struct SweepRecord {
  double kappa;
  int t;
  int j;
  double angle;
  std::uint64_t seed;
};

/// Post-transient codepoint positions across a kappa grid: for each kappa one
/// seeded random start (plus extra trials if requested) and n_iter normalized
/// Lloyd steps. Deterministic for fixed parameters regardless of threads.
std::vector<SweepRecord> stability_sweep(const SweepParams& p);

struct ScanRecord {
  double kappa;
  double lambda_min;
  double F;
  double bound;
};

/// Minimum circulant eigenvalue along a kappa grid (von Mises family).
std::vector<ScanRecord> eigen_scan(int n, const Eigen::VectorXd& grid, int threads = 1);

struct LyapunovScanRow {
  double kappa;
  Eigen::VectorXd exponents;  // sorted descending; empty when failed
  double max_orthogonal;
  bool failed;
};

/// Lyapunov spectrum per kappa; failures are marked and the scan continues.
std::vector<LyapunovScanRow> lyapunov_scan(int n, const Eigen::VectorXd& grid,
                                           const LyapunovParams& p, int threads = 1);

/// SALA residual trace (Fig-4-style data).
SalaTrace residual_trace(const DensityModel& h, int n, const SalaConfig& cfg);

}  // namespace circloyd
