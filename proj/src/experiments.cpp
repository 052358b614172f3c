#include "circloyd/experiments.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "circloyd/log.hpp"

namespace circloyd {

namespace {

// Runs fn(i) for i in [0, count); tasks must only touch their own slot.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace

Eigen::VectorXd kappa_grid(double lo, double hi, int count) {
  if (count < 2) throw std::domain_error("kappa_grid: need at least 2 points");
  if (!(lo >= 0.0 && hi <= kKappaMax && lo < hi)) {
    throw std::domain_error("kappa_grid: bad range");
  }
  const double step = (hi - lo) / (count - 1);
  Eigen::VectorXd grid(count);
  for (int i = 0; i < count; ++i) grid(i) = lo + i * step;
  return grid;
}

std::vector<SweepRecord> stability_sweep(const SweepParams& p) {
  if (p.n_trans >= p.n_iter || p.n_trans < 0) {
    throw std::domain_error("stability_sweep: need 0 <= n_trans < n_iter");
  }
  if (p.trials < 1) throw std::domain_error("stability_sweep: trials must be >= 1");
  const Eigen::VectorXd grid = kappa_grid(p.kappa_min, p.kappa_max, p.n_kappa);

  const int tasks = p.n_kappa * p.trials;
  std::vector<std::vector<SweepRecord>> slots(tasks);
  parallel_for(tasks, p.threads, [&](int task) {
    const int i = task / p.trials;
    const int trial = task % p.trials;
    const double kappa = grid(i);
    const std::uint64_t seed = mix_seed(p.seed, static_cast<std::uint64_t>(i),
                                        static_cast<std::uint64_t>(trial));
    const DensityModel h = DensityModel::von_mises(kappa);
    IterateOptions opts;
    opts.t_max = p.n_iter;
    opts.drift_removal = p.drift;
    opts.mode = p.mode;
    const Orbit orbit = iterate(random_configuration(p.n, seed), h, opts);
    std::vector<SweepRecord>& out = slots[task];
    if (orbit.failed()) {
      log::info("sweep: kappa=" + std::to_string(kappa) + " failed: " + *orbit.error);
      out.push_back(SweepRecord{kappa, -1, -1, std::numeric_limits<double>::quiet_NaN(), seed});
      return;
    }
    out.reserve(static_cast<std::size_t>(p.n_iter - p.n_trans) * p.n);
    for (int t = p.n_trans + 1; t <= p.n_iter; ++t) {
      const Configuration& state = orbit.states[t];
      for (int j = 0; j < p.n; ++j) {
        out.push_back(SweepRecord{kappa, t, j, state[j], seed});
      }
    }
  });

  std::vector<SweepRecord> records;
  for (const std::vector<SweepRecord>& slot : slots) {
    records.insert(records.end(), slot.begin(), slot.end());
  }
  return records;
}

std::vector<ScanRecord> eigen_scan(int n, const Eigen::VectorXd& grid, int threads) {
  std::vector<ScanRecord> records(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    const StabilityReport report = classify(n, DensityModel::von_mises(grid(i)));
    records[i] = ScanRecord{grid(i), report.lambda_min, report.F, report.bound};
  });
  return records;
}

std::vector<LyapunovScanRow> lyapunov_scan(int n, const Eigen::VectorXd& grid,
                                           const LyapunovParams& p, int threads) {
  std::vector<LyapunovScanRow> rows(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    LyapunovParams local = p;
    local.seed = mix_seed(p.seed, static_cast<std::uint64_t>(i), 0);
    LyapunovScanRow& row = rows[i];
    row.kappa = grid(i);
    try {
      const LyapunovReport report = lyapunov_spectrum(DensityModel::von_mises(grid(i)), n, local);
      row.exponents = report.exponents;
      row.max_orthogonal = report.max_orthogonal;
      row.failed = false;
    } catch (const std::domain_error& e) {
      log::info("lyapunov_scan: kappa=" + std::to_string(grid(i)) + " failed: " + e.what());
      row.exponents.resize(0);
      row.max_orthogonal = std::numeric_limits<double>::quiet_NaN();
      row.failed = true;
    }
  });
  return rows;
}

SalaTrace residual_trace(const DensityModel& h, int n, const SalaConfig& cfg) {
  return sala_run(h, n, cfg);
}

}  // namespace circloyd
