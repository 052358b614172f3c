#include "circloyd/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "circloyd/quadrature.hpp"

namespace circloyd {

namespace {

constexpr double kMinGeneratorGap = 1e-10;

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

VoronoiPartition voronoi_cyclic(const Eigen::VectorXd& angles) {
  const Eigen::Index n = angles.size();
  if (n < 2) {
    throw DegenerateConfigError("voronoi: need at least 2 codepoints");
  }
  Eigen::VectorXd gaps(n);
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = wrap_2pi(angles(j));
    const double b = wrap_2pi(angles((j + 1) % n));
    if (a == b) {
      throw DegenerateConfigError("voronoi: duplicate generators");
    }
    gaps(j) = forward_arc_length(a, b);
    if (gaps(j) <= kMinGeneratorGap) {
      throw DegenerateConfigError("voronoi: generator gap below tolerance");
    }
    total += gaps(j);
  }
  // A cyclically ordered configuration winds around the circle exactly once.
  if (std::abs(total - kTwoPi) > 1e-9) {
    throw DegenerateConfigError("voronoi: angles are not cyclically ordered");
  }
  VoronoiPartition part;
  part.boundaries.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    part.boundaries(j) = wrap_2pi(wrap_2pi(angles(j)) + 0.5 * gaps(j));
    const double cell_len = 0.5 * (gaps((j + n - 1) % n) + gaps(j));
    if (cell_len >= kPi + kArcGuardSlack) {
      throw CellTooLargeError("voronoi: cell length exceeds pi");
    }
  }
  return part;
}

VoronoiPartition voronoi(const Configuration& q) { return voronoi_cyclic(q.angles()); }

Eigen::VectorXd lloyd_update(const Eigen::VectorXd& angles, const DensityModel& h,
                             CentroidMode mode) {
  const VoronoiPartition part = voronoi_cyclic(angles);
  const Eigen::Index n = angles.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = part.cell_start(j);
    const double b = part.cell_end(j);
    const double qj = wrap_2pi(angles(j));
    if (mode == CentroidMode::intrinsic) {
      const CellMoments m = cell_moments(h, a, b, qj);
      out(j) = wrap_2pi(qj + m.local_first / m.mass);
    } else {
      const std::complex<double> z = arc_circular_first_moment(h, a, b);
      if (std::abs(z) < 1e-14) {
        throw UndefinedCentroidError("extrinsic centroid: first circular moment vanishes");
      }
      out(j) = wrap_2pi(std::atan2(z.imag(), z.real()));
    }
  }
  return out;
}

Configuration lloyd_step(const Configuration& q, const DensityModel& h, CentroidMode mode) {
  return sort_config(lloyd_update(q.angles(), h, mode));
}

double distortion(const Configuration& q, const DensityModel& h) {
  const VoronoiPartition part = voronoi(q);
  double total = 0.0;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    const double qj = q[j];
    const double len = part.cell_length(j);
    total += integrate_arc(part.cell_start(j), len, [&](double theta) {
      const double d = wrap_pi(theta - qj);
      return d * d * h(theta);
    });
  }
  return total;
}

double fixed_point_residual(const Configuration& q, const DensityModel& h, CentroidMode mode) {
  return config_distance(lloyd_step(q, h, mode), q);
}

Orbit iterate(const Configuration& q0, const DensityModel& h, const IterateOptions& opts) {
  Orbit orbit;
  orbit.states.push_back(q0);
  try {
    orbit.distortions.push_back(distortion(q0, h));
    for (int t = 0; t < opts.t_max; ++t) {
      const Configuration& cur = orbit.states.back();
      Configuration next = lloyd_step(cur, h, opts.mode);
      if (opts.drift_removal) {
        next = remove_drift(next);
      }
      orbit.residuals.push_back(config_distance(next, cur));
      orbit.distortions.push_back(distortion(next, h));
      orbit.states.push_back(std::move(next));
    }
  } catch (const std::domain_error& e) {
    orbit.error = std::string(e.what()) + " (at step " +
                  std::to_string(orbit.states.size() - 1) + ")";
  }
  return orbit;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Configuration random_configuration(int n, std::uint64_t seed) {
  if (n < 2) {
    throw DegenerateConfigError("random_configuration: need n >= 2");
  }
  std::mt19937_64 gen(seed);
  const double min_gap = kTwoPi / (100.0 * n);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Eigen::VectorXd a(n);
    for (int j = 0; j < n; ++j) a(j) = kTwoPi * uniform01(gen);
    std::sort(a.data(), a.data() + n);
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      const double gap =
          (j + 1 < n) ? a(j + 1) - a(j) : kTwoPi - a(n - 1) + a(0);
      ok = gap >= min_gap;
    }
    if (ok) return Configuration(a);
  }
  throw DegenerateConfigError("random_configuration: failed to draw a spaced configuration");
}

}  // namespace circloyd
