#include "circloyd/sala.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "circloyd/quantizer.hpp"

namespace circloyd {

namespace {

void validate(const SalaConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::domain_error("sala: epsilon must be positive");
  if (!(cfg.eta > cfg.epsilon)) throw std::domain_error("sala: eta must exceed epsilon");
  if (cfg.delta < 0.0) throw std::domain_error("sala: delta must be non-negative");
  if (cfg.window < 1) throw std::domain_error("sala: window must be >= 1");
  if (cfg.t_max < 1) throw std::domain_error("sala: t_max must be >= 1");
}

// Zero-mean kick: uniform draws on [-1, 1] recentered by their sample mean.
Eigen::VectorXd zero_mean_kick(Eigen::Index n, std::mt19937_64& gen) {
  Eigen::VectorXd xi(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    xi(j) = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  }
  xi.array() -= xi.mean();
  return xi;
}

}  // namespace

bool SalaTrace::perturbed_at(int t) const {
  return std::find(perturbation_steps.begin(), perturbation_steps.end(), t) !=
         perturbation_steps.end();
}

double oscillation_indicator(const Configuration& next, const Configuration& prev2) {
  return config_distance(next, prev2);
}

SalaTrace sala_run_with(const std::function<Configuration(const Configuration&)>& update,
                        const Configuration& q0, const SalaConfig& cfg) {
  validate(cfg);
  SalaTrace trace;
  Configuration q = q0;
  std::optional<Configuration> q_prev;  // Q(t-1)
  int window_count = 0;
  std::mt19937_64 gen(mix_seed(cfg.seed, 0x5a1aULL, 0));
  try {
    for (int t = 0; t < cfg.t_max; ++t) {
      Configuration q_next = update(q);
      const double r = config_distance(q_next, q);
      trace.residuals.push_back(r);
      double rho_t = 0.0;
      bool oscillating = false;
      if (t >= 2) {
        rho_t = oscillation_indicator(q_next, *q_prev);
        oscillating = rho_t < cfg.epsilon && r > cfg.eta;
      }
      trace.rho.push_back(rho_t);

      window_count = (r < cfg.epsilon) ? window_count + 1 : 0;
      if (window_count >= cfg.window) {
        trace.terminal = std::move(q_next);
        trace.status = SalaStatus::converged;
        return trace;
      }
      if (oscillating && cfg.delta > 0.0) {
        const Eigen::VectorXd xi = zero_mean_kick(q_next.size(), gen);
        q_next = sort_config(q_next.angles() + cfg.delta * xi);
        trace.perturbation_steps.push_back(t);
        window_count = 0;  // a kicked iterate is not converged
      }
      q_prev = std::move(q);
      q = std::move(q_next);
    }
    trace.terminal = q;
    trace.status = SalaStatus::max_iterations;
  } catch (const std::domain_error& e) {
    trace.error = std::string(e.what()) + " (at step " +
                  std::to_string(trace.residuals.size()) + ")";
    trace.terminal = q;
    trace.status = SalaStatus::max_iterations;
  }
  return trace;
}

SalaTrace sala_run(const DensityModel& h, int n, const SalaConfig& cfg) {
  if (n < 2) throw std::domain_error("sala: need n >= 2");
  const Configuration q0 = random_configuration(n, cfg.seed);
  auto update = [&h](const Configuration& q) {
    return remove_drift(lloyd_step(q, h, CentroidMode::intrinsic));
  };
  return sala_run_with(update, q0, cfg);
}

}  // namespace circloyd
