#include "circloyd/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "circloyd/errors.hpp"
#include "circloyd/linearization.hpp"

namespace circloyd {

namespace {

constexpr double kRankTol = 1e-14;

// Basis-alignment steps run before log accumulation starts; a cold identity
// basis biases each exponent by log(overlap)/n_iter, about 1e-3 at 500 steps.
constexpr int kBasisWarmup = 20;

// log|R_jj| with the per-step floor; flags the clamp.
double floored_log(double r, bool& flag) {
  if (r <= std::exp(kLogFloor)) {
    flag = true;
    return kLogFloor;
  }
  return std::log(r);
}

// Orthonormal basis of the complement of (1,...,1), fixed by construction.
Eigen::MatrixXd ones_complement_basis(int n) {
  Eigen::MatrixXd seed = Eigen::MatrixXd::Identity(n, n);
  seed.col(0).setOnes();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(seed);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

}  // namespace

QRPair qr_decompose(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) {
    throw std::domain_error("qr_decompose: non-finite matrix");
  }
  if (a.rows() > 64 || a.cols() > a.rows()) {
    throw std::domain_error("qr_decompose: expected a tall matrix with at most 64 rows");
  }
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  Eigen::MatrixXd r =
      qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) {
      r.row(j) *= -1.0;
      q.col(j) *= -1.0;
    }
    if (std::abs(r(j, j)) < kRankTol) {
      r(j, j) = 0.0;  // rank-deficient direction; shows up as a floored exponent
    }
  }
  return QRPair{std::move(q), std::move(r)};
}

QrAccumulation qr_exponents(const std::function<Eigen::MatrixXd(int)>& jacobian_at, int n,
                            int n_iter, int warmup) {
  if (n_iter < 1 || warmup < 0) {
    throw std::domain_error("qr_exponents: need n_iter >= 1 and warmup >= 0");
  }
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
  std::vector<bool> floored(n, false);
  for (int t = 0; t < warmup; ++t) {
    basis = qr_decompose(jacobian_at(t) * basis).Q_factor;
  }
  for (int t = warmup; t < warmup + n_iter; ++t) {
    QRPair qr = qr_decompose(jacobian_at(t) * basis);
    basis = std::move(qr.Q_factor);
    for (int j = 0; j < n; ++j) {
      bool flag = false;
      sums(j) += floored_log(qr.R_factor(j, j), flag);
      if (flag) floored[j] = true;
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sums(a) > sums(b); });
  QrAccumulation acc;
  acc.exponents.resize(n);
  acc.floored.resize(n);
  for (int j = 0; j < n; ++j) {
    acc.exponents(j) = sums(order[j]) / n_iter;
    acc.floored[j] = floored[order[j]];
  }
  return acc;
}

LyapunovReport lyapunov_spectrum(const DensityModel& h, int n, const LyapunovParams& p) {
  if (p.n_iter < 1 || p.n_trans < 0) {
    throw std::domain_error("lyapunov_spectrum: bad iteration counts");
  }
  Eigen::VectorXd q = random_configuration(n, p.seed).angles();
  int step = 0;
  try {
    for (int t = 0; t < p.n_trans; ++t, ++step) {
      q = lloyd_update(q, h, p.mode);
    }
    // Mean-removal projector; the transverse run quotients out the rotation
    // direction every step, otherwise finite-difference noise re-injects the
    // neutral mode and it overtakes the contracting ones.
    const Eigen::MatrixXd projector =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd transverse = ones_complement_basis(n);
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sums_perp = Eigen::VectorXd::Zero(n - 1);
    std::vector<bool> floored(n, false);
    for (int t = 0; t < kBasisWarmup; ++t, ++step) {
      const Eigen::MatrixXd jac = fd_jacobian_cyclic(q, h, p.eps, p.mode);
      basis = qr_decompose(jac * basis).Q_factor;
      transverse = qr_decompose(projector * (jac * transverse)).Q_factor;
      q = lloyd_update(q, h, p.mode);
    }
    for (int t = 0; t < p.n_iter; ++t, ++step) {
      const Eigen::MatrixXd jac = fd_jacobian_cyclic(q, h, p.eps, p.mode);
      QRPair qr = qr_decompose(jac * basis);
      basis = std::move(qr.Q_factor);
      for (int j = 0; j < n; ++j) {
        bool flag = false;
        sums(j) += floored_log(qr.R_factor(j, j), flag);
        if (flag) floored[j] = true;
      }
      QRPair qperp = qr_decompose(projector * (jac * transverse));
      transverse = std::move(qperp.Q_factor);
      for (int j = 0; j < n - 1; ++j) {
        bool flag = false;
        sums_perp(j) += floored_log(qperp.R_factor(j, j), flag);
      }
      q = lloyd_update(q, h, p.mode);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sums(a) > sums(b); });
    LyapunovReport report;
    report.exponents.resize(n);
    report.floored.resize(n);
    for (int j = 0; j < n; ++j) {
      report.exponents(j) = sums(order[j]) / p.n_iter;
      report.floored[j] = floored[order[j]];
    }
    report.n_iter = p.n_iter;
    report.n_trans = p.n_trans;
    report.kappa = h.kappa();
    report.seed = p.seed;
    report.max_orthogonal = sums_perp.maxCoeff() / p.n_iter;
    return report;
  } catch (const OrbitError&) {
    throw;
  } catch (const std::domain_error& e) {
    throw OrbitError(step, e.what());
  }
}

}  // namespace circloyd
