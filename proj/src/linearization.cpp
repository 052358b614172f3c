#include "circloyd/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace circloyd {

CirculantJacobian symmetric_jacobian(int n, const DensityModel& h) {
  if (n < 2) {
    throw std::domain_error("symmetric_jacobian: need n >= 2");
  }
  const DensityModel h0 = h.recentered();
  const double half_cell = kPi / n;
  const double mass = arc_mass(h0, -half_cell, half_cell);
  const double coupling = (kPi / (n * mass)) * h0(half_cell);
  return CirculantJacobian{n, 1.0 - coupling, 0.5 * coupling};
}

DenseMatrix expand(const CirculantJacobian& jac) {
  const int n = jac.n;
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    m(j, j) = jac.alpha;
    m(j, (j + 1) % n) += jac.beta;
    m(j, (j + n - 1) % n) += jac.beta;
  }
  return m;
}

ModeSpectrum circulant_eigenvalues(const CirculantJacobian& jac) {
  ModeSpectrum spectrum;
  spectrum.eigenvalues.resize(jac.n);
  for (int m = 0; m < jac.n; ++m) {
    // cos(2 pi m / n) = cos(2 pi (n-m) / n); evaluating the reduced mode keeps
    // the conjugate-mode symmetry bitwise exact.
    const int reduced = std::min(m, jac.n - m);
    spectrum.eigenvalues(m) = jac.alpha + 2.0 * jac.beta * std::cos(kTwoPi * reduced / jac.n);
  }
  return spectrum;
}

Eigen::VectorXd matvec(const DenseMatrix& a, const Eigen::VectorXd& v) {
  if (a.cols() != v.size()) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  return a * v;
}

DenseMatrix fd_jacobian_cyclic(const Eigen::VectorXd& angles, const DensityModel& h, double eps,
                               CentroidMode mode) {
  if (!(eps >= kFdEpsMin && eps <= kFdEpsMax)) {
    throw std::domain_error("fd_jacobian: eps outside [1e-9, 1e-3]");
  }
  const Eigen::Index n = angles.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double gap = forward_arc_length(wrap_2pi(angles(j)), wrap_2pi(angles((j + 1) % n)));
    if (gap < 2.0 * eps) {
      throw std::domain_error("fd_jacobian: perturbation too large for the configuration gap");
    }
  }
  DenseMatrix jac(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd plus = angles;
    Eigen::VectorXd minus = angles;
    plus(k) = wrap_2pi(plus(k) + eps);
    minus(k) = wrap_2pi(minus(k) - eps);
    const Eigen::VectorXd t_plus = lloyd_update(plus, h, mode);
    const Eigen::VectorXd t_minus = lloyd_update(minus, h, mode);
    for (Eigen::Index j = 0; j < n; ++j) {
      jac(j, k) = wrap_pi(t_plus(j) - t_minus(j)) / (2.0 * eps);
    }
  }
  return jac;
}

DenseMatrix fd_jacobian(const Configuration& q, const DensityModel& h, double eps,
                        CentroidMode mode) {
  return fd_jacobian_cyclic(q.angles(), h, eps, mode);
}

}  // namespace circloyd
