#include <doctest.h>

#include <cmath>

#include "circloyd/linearization.hpp"
#include "circloyd/lyapunov.hpp"
#include "oracles.hpp"

using namespace circloyd;

TEST_CASE("qr_decompose basics") {
  const QRPair id = qr_decompose(Eigen::MatrixXd::Identity(3, 3));
  CHECK((id.Q_factor - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((id.R_factor - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);

  Eigen::MatrixXd d = Eigen::Vector2d(2.0, 3.0).asDiagonal();
  const QRPair diag = qr_decompose(d);
  CHECK(diag.R_factor(0, 0) == doctest::Approx(2.0));
  CHECK(diag.R_factor(1, 1) == doctest::Approx(3.0));
  CHECK((diag.Q_factor - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("qr_decompose reconstruction and orthonormality") {
  const Eigen::MatrixXd a = oracles::seeded_matrix(5, 5, 77);
  const QRPair qr = qr_decompose(a);
  CHECK((qr.Q_factor * qr.R_factor - a).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((qr.Q_factor.transpose() * qr.Q_factor - Eigen::MatrixXd::Identity(5, 5))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  for (int j = 0; j < 5; ++j) {
    CHECK(qr.R_factor(j, j) >= 0.0);
    for (int i = j + 1; i < 5; ++i) CHECK(qr.R_factor(i, j) == 0.0);
  }
}

TEST_CASE("qr_decompose zeroes rank-deficient growth factors") {
  Eigen::MatrixXd a = oracles::seeded_matrix(4, 4, 5);
  a.col(2) = a.col(0) + a.col(1);  // exactly dependent
  const QRPair qr = qr_decompose(a);
  CHECK(qr.R_factor(2, 2) == 0.0);
  CHECK_THROWS_AS(qr_decompose(Eigen::MatrixXd::Constant(2, 2, std::nan(""))),
                  std::domain_error);
}

TEST_CASE("constant diagonal stub recovers its logarithms") {
  Eigen::MatrixXd stub = Eigen::Vector2d(0.5, 0.25).asDiagonal();
  const QrAccumulation acc = qr_exponents([&](int) { return stub; }, 2, 1000);
  CHECK(acc.exponents(0) == doctest::Approx(std::log(0.5)).epsilon(1e-10));
  CHECK(acc.exponents(1) == doctest::Approx(std::log(0.25)).epsilon(1e-10));
  CHECK(!acc.floored[0]);
  CHECK(!acc.floored[1]);
}

TEST_CASE("constant non-diagonal stub recovers its eigenvalue magnitudes") {
  const Eigen::MatrixXd v = oracles::seeded_orthogonal(3, 11);
  Eigen::Vector3d eigs(0.9, 0.5, 0.2);
  const Eigen::MatrixXd stub = v * eigs.asDiagonal() * v.transpose();
  // warmup aligns the basis with the eigenvectors; without it every exponent
  // carries a log(overlap)/n_iter bias of about 5e-4
  const QrAccumulation acc = qr_exponents([&](int) { return stub; }, 3, 1000, 60);
  for (int j = 0; j < 3; ++j) {
    CHECK(acc.exponents(j) == doctest::Approx(std::log(eigs(j))).epsilon(1e-6));
  }
}

TEST_CASE("sum rule: exponents add up to the determinant growth") {
  const Eigen::MatrixXd v = oracles::seeded_orthogonal(3, 11);
  Eigen::Vector3d eigs(0.9, 0.5, 0.2);
  const Eigen::MatrixXd stub = v * eigs.asDiagonal() * v.transpose();
  const QrAccumulation acc = qr_exponents([&](int) { return stub; }, 3, 1000);
  const double log_det = std::log(0.9 * 0.5 * 0.2);
  CHECK(acc.exponents.sum() == doctest::Approx(log_det).epsilon(1e-6));
}

TEST_CASE("exactly singular stub hits the log floor") {
  Eigen::MatrixXd stub = Eigen::Vector2d(0.5, 0.0).asDiagonal();
  const QrAccumulation acc = qr_exponents([&](int) { return stub; }, 2, 10);
  CHECK(acc.exponents(0) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(acc.exponents(1) == kLogFloor);
  CHECK(acc.floored[1]);
}

TEST_CASE("lyapunov spectrum of the uniform-density map, n = 3") {
  LyapunovParams p;
  p.n_trans = 200;
  p.n_iter = 500;
  p.seed = 7;
  const LyapunovReport report = lyapunov_spectrum(DensityModel::uniform(), 3, p);
  // orbit converges to the symmetric point whose spectrum is {1, 1/4, 1/4}
  CHECK(report.exponents(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-3));
  CHECK(report.exponents(1) == doctest::Approx(std::log(0.25)).epsilon(1e-3));
  CHECK(report.exponents(2) == doctest::Approx(std::log(0.25)).epsilon(1e-3));
  // the transverse estimate excludes the neutral direction
  CHECK(report.max_orthogonal == doctest::Approx(std::log(0.25)).epsilon(1e-2));
  CHECK(report.kappa == 0.0);
  CHECK(report.n_iter == 500);
}

TEST_CASE("lyapunov reports are deterministic") {
  LyapunovParams p;
  p.n_trans = 50;
  p.n_iter = 100;
  p.seed = 99;
  const DensityModel h = DensityModel::von_mises(2.0);
  const LyapunovReport a = lyapunov_spectrum(h, 4, p);
  const LyapunovReport b = lyapunov_spectrum(h, 4, p);
  for (int j = 0; j < 4; ++j) {
    CHECK(a.exponents(j) == b.exponents(j));
    CHECK(a.floored[j] == b.floored[j]);
  }
  CHECK(a.max_orthogonal == b.max_orthogonal);
}

TEST_CASE("lyapunov parameter validation") {
  LyapunovParams p;
  p.n_iter = 0;
  CHECK_THROWS_AS(lyapunov_spectrum(DensityModel::uniform(), 3, p), std::domain_error);
}
