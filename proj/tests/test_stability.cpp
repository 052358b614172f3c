#include <doctest.h>

#include <cmath>

#include "circloyd/linearization.hpp"
#include "circloyd/stability.hpp"
#include "oracles.hpp"

using namespace circloyd;

TEST_CASE("critical mode index") {
  CHECK(m_star(2) == 1);
  CHECK(m_star(4) == 2);
  CHECK(m_star(5) == 2);
  CHECK(m_star(7) == 3);
  CHECK(m_star(16) == 8);
  CHECK_THROWS_AS(m_star(1), std::domain_error);
}

TEST_CASE("flip bound") {
  for (int n : {2, 4, 8, 16, 32}) {
    CHECK(flip_bound(n) == 1.0);  // cos(pi) = -1 exactly
  }
  CHECK(flip_bound(3) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  // cos(4 pi/5) = -(1 + sqrt 5)/4, so the bound is 8/(5 + sqrt 5)
  CHECK(flip_bound(5) == doctest::Approx(8.0 / (5.0 + std::sqrt(5.0))).epsilon(1e-12));
  CHECK(flip_bound(5) == doctest::Approx(1.105573).epsilon(1e-6));
}

TEST_CASE("stability functional") {
  const DensityModel u = DensityModel::uniform();
  for (int n : {2, 3, 4, 8, 12}) {
    CHECK(stability_functional_F(n, u) == doctest::Approx(0.5).epsilon(1e-12));
  }
  // scale invariance: normalized and unnormalized von Mises give the same F
  const double f_norm = stability_functional_F(4, DensityModel::von_mises(2.0));
  const double f_raw = stability_functional_F(4, DensityModel::von_mises_unnormalized(2.0));
  CHECK(f_norm == doctest::Approx(f_raw).epsilon(1e-12));

  // concentration shrinks the boundary density relative to the cell mass
  const double f50 = stability_functional_F(8, DensityModel::von_mises(50.0));
  CHECK(f50 < 0.5);
  double prev = stability_functional_F(8, DensityModel::von_mises(0.0));
  for (double kappa : {2.0, 10.0, 30.0, 50.0}) {
    const double f = stability_functional_F(8, DensityModel::von_mises(kappa));
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("stability functional matches its explicit integral form") {
  // F = pi/(n M) * exp(kappa cos(pi/n)) with M the unnormalized cell mass,
  // checked against an independent Simpson oracle
  for (int n : {3, 8}) {
    for (double kappa : {1.0, 5.0}) {
      const double mass = oracles::simpson(
          [kappa](double t) { return std::exp(kappa * std::cos(t)); }, -kPi / n, kPi / n,
          1 << 15);
      const double expected = kPi / (n * mass) * std::exp(kappa * std::cos(kPi / n));
      CHECK(stability_functional_F(n, DensityModel::von_mises(kappa)) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("F equals twice the circulant coupling") {
  for (int n : {2, 3, 4, 8}) {
    for (double kappa : {0.0, 1.0, 5.0, 20.0}) {
      const DensityModel h = DensityModel::von_mises(kappa);
      CHECK(stability_functional_F(n, h) == 2.0 * symmetric_jacobian(n, h).beta);
    }
  }
}

TEST_CASE("classification of the uniform case") {
  const StabilityReport r4 = classify(4, DensityModel::uniform());
  CHECK(r4.verdict == Verdict::stable);
  CHECK(r4.F == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r4.bound == 1.0);
  CHECK(r4.m_star == 2);
  CHECK(std::abs(r4.lambda_min) < 1e-12);
  CHECK(r4.margin == doctest::Approx(0.5).epsilon(1e-12));

  const StabilityReport r3 = classify(3, DensityModel::uniform());
  CHECK(r3.verdict == Verdict::stable);
  CHECK(r3.lambda_min == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("report fields are mutually consistent") {
  for (int n : {2, 3, 5, 8}) {
    for (double kappa : {0.0, 0.5, 2.0, 10.0}) {
      const StabilityReport r = classify(n, DensityModel::von_mises(kappa));
      CHECK(r.lambda_min ==
            doctest::Approx(1.0 - r.F * (1.0 - std::cos(kTwoPi * r.m_star / n)))
                .epsilon(1e-12));
      CHECK(r.margin == doctest::Approx(r.bound - r.F).epsilon(1e-14));
      CHECK(r.lambda_min <= 1.0);
      CHECK((r.verdict == Verdict::stable) == (r.lambda_min > -1.0 + 1e-12));
    }
  }
}

TEST_CASE("lambda_min agrees with the circulant spectrum") {
  for (int n : {2, 3, 4, 5, 6, 7, 8}) {
    for (double kappa : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
      const DensityModel h = DensityModel::von_mises(kappa);
      const StabilityReport r = classify(n, h);
      const ModeSpectrum s = circulant_eigenvalues(symmetric_jacobian(n, h));
      double min_eig = s.eigenvalues(0);
      double min_nontrivial = 2.0;
      for (int m = 0; m < n; ++m) {
        min_eig = std::min(min_eig, s.eigenvalues(m));
        if (m > 0) min_nontrivial = std::min(min_nontrivial, s.eigenvalues(m));
      }
      CHECK(std::abs(r.lambda_min - min_eig) < 1e-12);
      // the minimum sits at the critical mode
      CHECK(s.eigenvalues(r.m_star) == doctest::Approx(min_eig).epsilon(1e-14));
      // nontrivial eigenvalues sit strictly below one whenever the coupling
      // is large enough to register in double precision; at n = 2, kappa = 50
      // the gap 2*beta*(1 - cos) underflows the last bit of 1.0
      CHECK(min_nontrivial <= 1.0);
      for (int m = 1; m < n; ++m) {
        CHECK(s.eigenvalues(m) <= 1.0);
        if (r.F * (1.0 - std::cos(kTwoPi * m / n)) > 1e-12) {
          CHECK(s.eigenvalues(m) < 1.0);
        }
      }
    }
  }
}

TEST_CASE("verdict flips exactly at the synthetic boundary") {
  for (int n : {3, 4, 8}) {
    const double bound = flip_bound(n);
    const StabilityReport at = classify_from_F(n, bound);
    CHECK(at.verdict == Verdict::marginal);
    CHECK(at.lambda_min == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(classify_from_F(n, bound - 1e-9).verdict == Verdict::stable);
    CHECK(classify_from_F(n, bound + 1e-9).verdict == Verdict::unstable);
    // inside the tolerance band everything is marginal
    CHECK(classify_from_F(n, bound + 5e-13).verdict == Verdict::marginal);
  }
}

TEST_CASE("verdict is monotone in F") {
  double prev_lambda = 2.0;
  for (double f : {0.1, 0.3, 0.5, 0.9, 1.0, 1.5}) {
    const StabilityReport r = classify_from_F(4, f);
    CHECK(r.lambda_min <= prev_lambda);
    prev_lambda = r.lambda_min;
  }
}

TEST_CASE("critical kappa finds no root for von Mises") {
  for (int n : {4, 8}) {
    const CriticalKappaResult r = critical_kappa(n, 0.0, 50.0, 1e-8);
    CHECK(!r.found);
    CHECK(r.max_F < flip_bound(n));
    CHECK(r.max_F == doctest::Approx(0.5).epsilon(1e-10));  // maximum sits at kappa = 0
  }
}

TEST_CASE("critical kappa refines a synthetic linear crossing") {
  // F(kappa) = 1/2 + kappa crosses the even-n bound of 1 at kappa = 1/2
  const CriticalKappaResult r =
      critical_kappa(4, 0.0, 50.0, 1e-10, [](double kappa) { return 0.5 + kappa; });
  CHECK(r.found);
  CHECK(r.kappa_c == doctest::Approx(0.5).epsilon(1e-9));

  CHECK_THROWS_AS(critical_kappa(4, -1.0, 10.0, 1e-8), std::domain_error);
  CHECK_THROWS_AS(critical_kappa(4, 0.0, 10.0, -1.0), std::domain_error);
}
