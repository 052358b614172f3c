#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "circloyd/density.hpp"
#include "circloyd/quantizer.hpp"

namespace circloyd {

// Householder QR with non-negative diagonal of R; diagonal entries below
// 1e-14 are set to exactly zero so rank-deficient growth shows up as a
// floored exponent rather than noise.
struct QRPair {
  Eigen::MatrixXd Q_factor;
  Eigen::MatrixXd R_factor;
};

QRPair qr_decompose(const Eigen::MatrixXd& a);

// Per-step floor on log|R_jj|; keeps exponents finite when a growth factor is
// exactly zero (the uniform n = 4 spectrum contains lambda = 0).
inline constexpr double kLogFloor = -50.0;

struct QrAccumulation {
  Eigen::VectorXd exponents;  // sorted descending
  std::vector<bool> floored;  // aligned with exponents
};

/// Runs the tangent-propagation / QR-renormalization loop with Jacobians from
/// an arbitrary source. jacobian_at(t) is called for t = 0..warmup+n_iter-1;
/// the first `warmup` steps align the basis without accumulating logs (a cold
/// identity basis biases every finite-time exponent by log(overlap)/n_iter).
QrAccumulation qr_exponents(const std::function<Eigen::MatrixXd(int)>& jacobian_at, int n,
                            int n_iter, int warmup = 0);

struct LyapunovParams {
  int n_trans = 200;
  int n_iter = 500;
  double eps = 1e-6;
  std::uint64_t seed = 0;
  CentroidMode mode = CentroidMode::intrinsic;
};

struct LyapunovReport {
  Eigen::VectorXd exponents;  // nats per iteration, sorted descending
  std::vector<bool> floored;
  int n_iter = 0;
  int n_trans = 0;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  // Largest exponent over the subspace orthogonal to the rotation direction
  // (1,...,1); the full spectrum keeps the neutral mode's zero.
  double max_orthogonal = 0.0;
};

/// Lyapunov spectrum of the Lloyd map along a seeded orbit: transient steps,
/// then finite-difference Jacobians propagated through repeated QR.
LyapunovReport lyapunov_spectrum(const DensityModel& h, int n, const LyapunovParams& p);

}  // namespace circloyd
