#pragma once

#include <Eigen/Dense>

#include "circloyd/density.hpp"
#include "circloyd/quantizer.hpp"

namespace circloyd {

using DenseMatrix = Eigen::MatrixXd;

// Linearization of the Lloyd map at the equally spaced configuration: a
// circulant periodic tridiagonal matrix with diagonal alpha and neighbor
// coupling beta. Row sums are 1 (rotational neutral mode).
struct CirculantJacobian {
  int n;
  double alpha;
  double beta;
};

/// Analytical Jacobian at the symmetric configuration. For von Mises input the
/// density is recentered to mu = 0, matching the symmetric-cell derivation.
CirculantJacobian symmetric_jacobian(int n, const DensityModel& h);

/// Dense periodic tridiagonal matrix with the circulant entries.
DenseMatrix expand(const CirculantJacobian& jac);

struct ModeSpectrum {
  Eigen::VectorXd eigenvalues;  // lambda_m = alpha + 2 beta cos(2 pi m / n), m = 0..n-1
};

ModeSpectrum circulant_eigenvalues(const CirculantJacobian& jac);

/// Matrix-vector product with a dimension check.
Eigen::VectorXd matvec(const DenseMatrix& a, const Eigen::VectorXd& v);

inline constexpr double kFdEpsMin = 1e-9;
inline constexpr double kFdEpsMax = 1e-3;

/// Centered-difference Jacobian of the Lloyd map at a configuration. The
/// perturbed evaluations keep codepoint labels (no re-sorting). Requires all
/// cyclic gaps > 2*eps.
DenseMatrix fd_jacobian(const Configuration& q, const DensityModel& h, double eps = 1e-6,
                        CentroidMode mode = CentroidMode::intrinsic);

/// Same, for angles already in cyclic label order.
DenseMatrix fd_jacobian_cyclic(const Eigen::VectorXd& angles, const DensityModel& h,
                               double eps = 1e-6, CentroidMode mode = CentroidMode::intrinsic);

}  // namespace circloyd
