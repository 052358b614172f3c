#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "circloyd/angle.hpp"
#include "circloyd/density.hpp"

namespace circloyd {

struct SalaConfig {
  double epsilon = 1e-9;  // convergence tolerance on the residual norm
  double eta = 1e-4;      // oscillation threshold; must exceed epsilon
  double delta = 1e-3;    // perturbation magnitude
  int window = 5;         // consecutive small residuals required to converge
  int t_max = 10000;
  std::uint64_t seed = 0;
};

enum class SalaStatus { converged, max_iterations };

struct SalaTrace {
  std::vector<double> residuals;        // r_t = ||Q(t+1) - Q(t)||
  std::vector<double> rho;              // ||Q(t+1) - Q(t-1)||, 0 while undefined (t < 2)
  std::vector<int> perturbation_steps;  // iterations where the escape fired
  std::optional<Configuration> terminal;
  SalaStatus status = SalaStatus::max_iterations;
  std::optional<std::string> error;  // set when the run aborted early

  bool perturbed_at(int t) const;
};

/// ||Q_next - Q_prev2|| with the same wrapped, cyclically aligned norm as the
/// residual; near zero on a period-2 orbit.
double oscillation_indicator(const Configuration& next, const Configuration& prev2);

/// Stability-aware Lloyd iteration: intrinsic centroid update with wrap/sort/
/// drift normalization, convergence windowing, period-2 detection, and a
/// zero-mean random kick of size delta when an oscillation is caught.
SalaTrace sala_run(const DensityModel& h, int n, const SalaConfig& cfg);

/// Same control loop driven by an arbitrary update map (test seam; delta = 0
/// disables the escape entirely).
SalaTrace sala_run_with(const std::function<Configuration(const Configuration&)>& update,
                        const Configuration& q0, const SalaConfig& cfg);

}  // namespace circloyd
