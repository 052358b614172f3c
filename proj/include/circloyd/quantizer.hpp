#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "circloyd/angle.hpp"
#include "circloyd/density.hpp"

namespace circloyd {

enum class CentroidMode { intrinsic, extrinsic };

// Voronoi partition of the circle induced by a cyclically ordered codebook.
// boundaries[j] is the circular midpoint of codepoints j and j+1; cell j is
// the forward arc (boundaries[j-1], boundaries[j]) and contains codepoint j.
struct VoronoiPartition {
  Eigen::VectorXd boundaries;

  Eigen::Index size() const { return boundaries.size(); }
  double cell_start(Eigen::Index j) const {
    return boundaries((j + boundaries.size() - 1) % boundaries.size());
  }
  double cell_end(Eigen::Index j) const { return boundaries(j); }
  double cell_length(Eigen::Index j) const {
    return forward_arc_length(cell_start(j), cell_end(j));
  }
};

VoronoiPartition voronoi(const Configuration& q);

/// Voronoi partition of angles given in cyclic (label) order without sorting.
/// Used by paths that must preserve codepoint labels.
VoronoiPartition voronoi_cyclic(const Eigen::VectorXd& angles);

/// One Lloyd update in label order: each angle moves to the centroid of its
/// cell. Output angles are wrapped but not sorted.
Eigen::VectorXd lloyd_update(const Eigen::VectorXd& angles, const DensityModel& h,
                             CentroidMode mode);

/// One Lloyd step: centroid update, then wrap and sort into a Configuration.
Configuration lloyd_step(const Configuration& q, const DensityModel& h,
                         CentroidMode mode = CentroidMode::intrinsic);

/// Expected squared geodesic distance to the nearest codepoint.
double distortion(const Configuration& q, const DensityModel& h);

/// config_distance between lloyd_step(q) and q; zero at a fixed point.
double fixed_point_residual(const Configuration& q, const DensityModel& h,
                            CentroidMode mode = CentroidMode::intrinsic);

struct IterateOptions {
  int t_max = 100;
  bool drift_removal = true;  // wrap -> sort -> remove_drift each step
  CentroidMode mode = CentroidMode::intrinsic;
};

struct Orbit {
  std::vector<Configuration> states;  // states[0] is the initial configuration
  std::vector<double> residuals;      // residuals[t] = d(states[t+1], states[t])
  std::vector<double> distortions;    // one per state
  std::optional<std::string> error;   // set when the orbit aborted early

  bool failed() const { return error.has_value(); }
};

Orbit iterate(const Configuration& q0, const DensityModel& h, const IterateOptions& opts);

/// Seeded random configuration: n uniform draws, sorted, redrawn while any
/// cyclic gap is below 2*pi/(100n).
Configuration random_configuration(int n, std::uint64_t seed);

/// Deterministic seed mixing (splitmix64 over base and two indices); keeps
/// grid tasks and perturbation streams decoupled but reproducible.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

}  // namespace circloyd
