// Command-line front end: stability diagrams, eigenvalue scans, Lyapunov
// spectra, SALA traces, and single-map diagnostics, emitted as CSV, JSON, or
// SVG. Exit codes: 0 success, 1 usage error, 2 numerical-domain or I/O error.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "circloyd/experiments.hpp"
#include "circloyd/io.hpp"
#include "circloyd/linearization.hpp"
#include "circloyd/log.hpp"

namespace {

using namespace circloyd;
using nlohmann::json;

struct DensityOpts {
  std::string family = "vonmises";
  double kappa = 1.0;
  double mu = 0.0;
};

void add_density_opts(CLI::App* cmd, DensityOpts& d) {
  cmd->add_option("--density", d.family, "Density family")
      ->check(CLI::IsMember({"uniform", "vonmises"}));
  cmd->add_option("--kappa", d.kappa, "von Mises concentration");
  cmd->add_option("--mu", d.mu, "von Mises mean direction (radians)");
}

DensityModel make_density(const DensityOpts& d) {
  if (d.family == "uniform") return DensityModel::uniform();
  return DensityModel::von_mises(d.kappa, d.mu);
}

CentroidMode parse_mode(const std::string& mode) {
  return mode == "extrinsic" ? CentroidMode::extrinsic : CentroidMode::intrinsic;
}

// Writes through a callback so "-" can mean stdout.
void write_output(const std::string& out, const std::function<void(std::ostream&)>& writer) {
  if (out == "-" || out.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open output file: " + out);
  }
  writer(file);
  file.flush();
  if (!file.good()) {
    throw std::runtime_error("write failed: " + out);
  }
}

int usage_error(const std::string& msg) {
  std::cerr << "circloyd: " << msg << "\n";
  return 1;
}

Configuration config_from_flag(const std::string& csv, int n) {
  if (csv.empty()) {
    return Configuration::equally_spaced(n);
  }
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    values.push_back(std::stod(item));
  }
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
  return sort_config(v);
}

json config_to_json(const Configuration& q) {
  json arr = json::array();
  for (Eigen::Index j = 0; j < q.size(); ++j) arr.push_back(q[j]);
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lloyd quantization dynamics on the circle"};
  app.require_subcommand(1);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Post-transient codepoints across a kappa grid");
  SweepParams sweep;
  std::string sweep_out = "-", sweep_format = "csv", sweep_mode = "intrinsic";
  bool sweep_no_drift = false;
  sweep_cmd->add_option("--n", sweep.n, "codepoints")->check(CLI::Range(2, 64));
  sweep_cmd->add_option("--kappa-min", sweep.kappa_min);
  sweep_cmd->add_option("--kappa-max", sweep.kappa_max);
  sweep_cmd->add_option("--nk", sweep.n_kappa, "kappa grid points");
  sweep_cmd->add_option("--iters", sweep.n_iter);
  sweep_cmd->add_option("--trans", sweep.n_trans);
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--trials", sweep.trials);
  sweep_cmd->add_option("--threads", sweep.threads);
  sweep_cmd->add_flag("--no-drift", sweep_no_drift, "skip rotational drift removal");
  sweep_cmd->add_option("--mode", sweep_mode)->check(CLI::IsMember({"intrinsic", "extrinsic"}));
  sweep_cmd->add_option("--out", sweep_out);
  sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json", "svg"}));

  // eigen
  auto* eigen_cmd = app.add_subcommand("eigen", "Circulant Jacobian spectrum at the symmetric point");
  DensityOpts eigen_density;
  int eigen_n = 8;
  std::string eigen_out = "-", eigen_format = "json";
  eigen_cmd->add_option("--n", eigen_n)->check(CLI::Range(2, 64));
  add_density_opts(eigen_cmd, eigen_density);
  eigen_cmd->add_option("--out", eigen_out);
  eigen_cmd->add_option("--format", eigen_format)->check(CLI::IsMember({"json"}));

  // fscan
  auto* fscan_cmd = app.add_subcommand("fscan", "Minimum eigenvalue vs kappa (stability boundary)");
  int fscan_n = 8, fscan_nk = 101, fscan_threads = 1;
  double fscan_lo = 0.0, fscan_hi = 50.0;
  std::string fscan_out = "-", fscan_format = "csv";
  fscan_cmd->add_option("--n", fscan_n)->check(CLI::Range(2, 64));
  fscan_cmd->add_option("--kappa-min", fscan_lo);
  fscan_cmd->add_option("--kappa-max", fscan_hi);
  fscan_cmd->add_option("--nk", fscan_nk);
  fscan_cmd->add_option("--threads", fscan_threads);
  fscan_cmd->add_option("--out", fscan_out);
  fscan_cmd->add_option("--format", fscan_format)->check(CLI::IsMember({"csv", "json", "svg"}));

  // lyapunov
  auto* lyap_cmd = app.add_subcommand("lyapunov", "Lyapunov spectrum via QR along an orbit");
  int lyap_n = 8, lyap_nk = 0, lyap_threads = 1;
  double lyap_kappa = 1.0, lyap_lo = 0.0, lyap_hi = 10.0;
  LyapunovParams lyap_params;
  std::string lyap_out = "-", lyap_format = "", lyap_mode = "intrinsic";
  lyap_cmd->add_option("--n", lyap_n)->check(CLI::Range(2, 64));
  lyap_cmd->add_option("--kappa", lyap_kappa, "single concentration");
  lyap_cmd->add_option("--kappa-min", lyap_lo);
  lyap_cmd->add_option("--kappa-max", lyap_hi);
  lyap_cmd->add_option("--nk", lyap_nk, "grid points; enables the kappa scan");
  lyap_cmd->add_option("--iters", lyap_params.n_iter);
  lyap_cmd->add_option("--trans", lyap_params.n_trans);
  lyap_cmd->add_option("--eps-fd", lyap_params.eps);
  lyap_cmd->add_option("--seed", lyap_params.seed);
  lyap_cmd->add_option("--threads", lyap_threads);
  lyap_cmd->add_option("--mode", lyap_mode)->check(CLI::IsMember({"intrinsic", "extrinsic"}));
  lyap_cmd->add_option("--out", lyap_out);
  lyap_cmd->add_option("--format", lyap_format)->check(CLI::IsMember({"csv", "json", "svg"}));

  // sala
  auto* sala_cmd = app.add_subcommand("sala", "Stability-aware Lloyd iteration trace");
  DensityOpts sala_density;
  int sala_n = 8;
  SalaConfig sala_cfg;
  std::string sala_out = "-", sala_format = "csv";
  sala_cmd->add_option("--n", sala_n)->check(CLI::Range(2, 64));
  add_density_opts(sala_cmd, sala_density);
  sala_cmd->add_option("--epsilon", sala_cfg.epsilon)->check(CLI::PositiveNumber);
  sala_cmd->add_option("--eta", sala_cfg.eta)->check(CLI::PositiveNumber);
  sala_cmd->add_option("--delta", sala_cfg.delta)->check(CLI::PositiveNumber);
  sala_cmd->add_option("--window", sala_cfg.window)->check(CLI::Range(1, 1000000));
  sala_cmd->add_option("--tmax", sala_cfg.t_max)->check(CLI::Range(1, 100000000));
  sala_cmd->add_option("--seed", sala_cfg.seed);
  sala_cmd->add_option("--out", sala_out);
  sala_cmd->add_option("--format", sala_format)->check(CLI::IsMember({"csv", "json", "svg"}));

  // jacobian
  auto* jac_cmd = app.add_subcommand("jacobian", "Analytical circulant Jacobian, optional FD check");
  DensityOpts jac_density;
  int jac_n = 8;
  bool jac_fd = false;
  double jac_eps = 1e-6;
  std::string jac_out = "-", jac_format = "json", jac_mode = "intrinsic";
  jac_cmd->add_option("--n", jac_n)->check(CLI::Range(2, 64));
  add_density_opts(jac_cmd, jac_density);
  jac_cmd->add_flag("--fd", jac_fd, "also compare against the finite-difference Jacobian");
  jac_cmd->add_option("--eps-fd", jac_eps);
  jac_cmd->add_option("--mode", jac_mode)->check(CLI::IsMember({"intrinsic", "extrinsic"}));
  jac_cmd->add_option("--out", jac_out);
  jac_cmd->add_option("--format", jac_format)->check(CLI::IsMember({"json"}));

  // critical-kappa
  auto* crit_cmd = app.add_subcommand("critical-kappa", "Search for the flip-bifurcation threshold");
  int crit_n = 8;
  double crit_lo = 0.0, crit_hi = 100.0, crit_tol = 1e-8;
  std::string crit_out = "-", crit_format = "json";
  crit_cmd->add_option("--n", crit_n)->check(CLI::Range(2, 64));
  crit_cmd->add_option("--kappa-min", crit_lo);
  crit_cmd->add_option("--kappa-max", crit_hi);
  crit_cmd->add_option("--tol", crit_tol)->check(CLI::PositiveNumber);
  crit_cmd->add_option("--out", crit_out);
  crit_cmd->add_option("--format", crit_format)->check(CLI::IsMember({"json"}));

  // distortion
  auto* dist_cmd = app.add_subcommand("distortion", "Distortion of a configuration");
  DensityOpts dist_density;
  int dist_n = 8;
  std::string dist_config, dist_out = "-", dist_format = "json";
  dist_cmd->add_option("--n", dist_n)->check(CLI::Range(2, 64));
  add_density_opts(dist_cmd, dist_density);
  dist_cmd->add_option("--config", dist_config, "comma-separated angles; default equally spaced");
  dist_cmd->add_option("--out", dist_out);
  dist_cmd->add_option("--format", dist_format)->check(CLI::IsMember({"json"}));

  // step
  auto* step_cmd = app.add_subcommand("step", "Apply the Lloyd map; --iters > 1 exports the orbit");
  DensityOpts step_density;
  int step_n = 8, step_iters = 1;
  bool step_no_drift = false;
  std::string step_config, step_out = "-", step_format = "", step_mode = "intrinsic";
  step_cmd->add_option("--n", step_n)->check(CLI::Range(2, 64));
  add_density_opts(step_cmd, step_density);
  step_cmd->add_option("--config", step_config, "comma-separated angles; default equally spaced");
  step_cmd->add_option("--iters", step_iters)->check(CLI::Range(1, 100000000));
  step_cmd->add_flag("--no-drift", step_no_drift);
  step_cmd->add_option("--mode", step_mode)->check(CLI::IsMember({"intrinsic", "extrinsic"}));
  step_cmd->add_option("--out", step_out);
  step_cmd->add_option("--format", step_format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sweep_cmd->parsed()) {
      sweep.drift = !sweep_no_drift;
      sweep.mode = parse_mode(sweep_mode);
      const std::vector<SweepRecord> records = stability_sweep(sweep);
      write_output(sweep_out, [&](std::ostream& os) {
        if (sweep_format == "csv") {
          write_sweep_csv(os, records);
        } else if (sweep_format == "json") {
          json arr = json::array();
          for (const SweepRecord& r : records) {
            arr.push_back({{"kappa", r.kappa}, {"t", r.t}, {"j", r.j}, {"angle", r.angle},
                           {"seed", r.seed}});
          }
          os << arr.dump() << "\n";
        } else {
          PlotSpec spec;
          spec.kind = PlotSpec::Kind::scatter;
          spec.title = "Post-transient codepoints vs concentration";
          spec.x_label = "kappa";
          spec.y_label = "angle";
          for (const SweepRecord& r : records) {
            if (r.t >= 0) spec.points.emplace_back(r.kappa, r.angle);
          }
          emit_svg(spec, os);
        }
      });
      return 0;
    }

    if (eigen_cmd->parsed()) {
      const CirculantJacobian jac = symmetric_jacobian(eigen_n, make_density(eigen_density));
      write_output(eigen_out, [&](std::ostream& os) {
        os << jacobian_json(jac, circulant_eigenvalues(jac)) << "\n";
      });
      return 0;
    }

    if (fscan_cmd->parsed()) {
      const Eigen::VectorXd grid = kappa_grid(fscan_lo, fscan_hi, fscan_nk);
      const std::vector<ScanRecord> records = eigen_scan(fscan_n, grid, fscan_threads);
      write_output(fscan_out, [&](std::ostream& os) {
        if (fscan_format == "csv") {
          write_scan_csv(os, records);
        } else if (fscan_format == "json") {
          json arr = json::array();
          for (Eigen::Index i = 0; i < grid.size(); ++i) {
            arr.push_back(json::parse(
                stability_json(classify(fscan_n, DensityModel::von_mises(grid(i))))));
          }
          os << arr.dump() << "\n";
        } else {
          PlotSpec spec;
          spec.kind = PlotSpec::Kind::line;
          spec.title = "Minimum eigenvalue vs concentration";
          spec.x_label = "kappa";
          spec.y_label = "lambda_min";
          for (const ScanRecord& r : records) spec.points.emplace_back(r.kappa, r.lambda_min);
          spec.reference_lines = {-1.0, 1.0};
          emit_svg(spec, os);
        }
      });
      return 0;
    }

    if (lyap_cmd->parsed()) {
      lyap_params.mode = parse_mode(lyap_mode);
      const bool scan = lyap_cmd->count("--nk") > 0;
      if (!scan) {
        if (lyap_format.empty()) lyap_format = "json";
        if (lyap_format != "json") {
          return usage_error("lyapunov: single-kappa runs emit JSON only");
        }
        const LyapunovReport report =
            lyapunov_spectrum(DensityModel::von_mises(lyap_kappa), lyap_n, lyap_params);
        write_output(lyap_out, [&](std::ostream& os) { os << lyapunov_json(report) << "\n"; });
        return 0;
      }
      if (lyap_format.empty()) lyap_format = "csv";
      const Eigen::VectorXd grid = kappa_grid(lyap_lo, lyap_hi, lyap_nk);
      const std::vector<LyapunovScanRow> rows =
          lyapunov_scan(lyap_n, grid, lyap_params, lyap_threads);
      write_output(lyap_out, [&](std::ostream& os) {
        if (lyap_format == "csv") {
          write_lyapunov_scan_csv(os, rows);
        } else if (lyap_format == "json") {
          json arr = json::array();
          for (const LyapunovScanRow& row : rows) {
            json item;
            item["kappa"] = row.kappa;
            item["failed"] = row.failed;
            json exps = json::array();
            for (Eigen::Index j = 0; j < row.exponents.size(); ++j)
              exps.push_back(row.exponents(j));
            item["exponents"] = exps;
            item["max_orthogonal"] = row.max_orthogonal;
            arr.push_back(item);
          }
          os << arr.dump() << "\n";
        } else {
          PlotSpec spec;
          spec.kind = PlotSpec::Kind::line;
          spec.title = "Largest Lyapunov exponent vs concentration";
          spec.x_label = "kappa";
          spec.y_label = "lambda_max";
          for (const LyapunovScanRow& row : rows) {
            if (!row.failed && row.exponents.size() > 0)
              spec.points.emplace_back(row.kappa, row.exponents(0));
          }
          spec.reference_lines = {0.0};
          emit_svg(spec, os);
        }
      });
      return 0;
    }

    if (sala_cmd->parsed()) {
      const SalaTrace trace = sala_run(make_density(sala_density), sala_n, sala_cfg);
      write_output(sala_out, [&](std::ostream& os) {
        if (sala_format == "csv") {
          write_sala_csv(os, trace);
        } else if (sala_format == "json") {
          json j;
          j["status"] = trace.status == SalaStatus::converged ? "converged" : "max_iterations";
          j["iterations"] = trace.residuals.size();
          j["perturbation_steps"] = trace.perturbation_steps;
          j["final_residual"] = trace.residuals.empty() ? 0.0 : trace.residuals.back();
          if (trace.terminal) j["terminal"] = config_to_json(*trace.terminal);
          if (trace.error) j["error"] = *trace.error;
          os << j.dump() << "\n";
        } else {
          PlotSpec spec;
          spec.kind = PlotSpec::Kind::line;
          spec.title = "SALA residuals";
          spec.x_label = "t";
          spec.y_label = "residual";
          for (std::size_t t = 0; t < trace.residuals.size(); ++t) {
            spec.points.emplace_back(static_cast<double>(t), trace.residuals[t]);
          }
          emit_svg(spec, os);
        }
      });
      return 0;
    }

    if (jac_cmd->parsed()) {
      const DensityModel h = make_density(jac_density);
      const CirculantJacobian jac = symmetric_jacobian(jac_n, h);
      json j = json::parse(jacobian_json(jac, circulant_eigenvalues(jac)));
      if (jac_fd) {
        const DenseMatrix fd =
            fd_jacobian(Configuration::equally_spaced(jac_n), h, jac_eps, parse_mode(jac_mode));
        j["fd_max_abs_diff"] = (fd - expand(jac)).cwiseAbs().maxCoeff();
      }
      write_output(jac_out, [&](std::ostream& os) { os << j.dump() << "\n"; });
      return 0;
    }

    if (crit_cmd->parsed()) {
      const CriticalKappaResult result = critical_kappa(crit_n, crit_lo, crit_hi, crit_tol);
      write_output(crit_out, [&](std::ostream& os) {
        os << critical_kappa_json(result) << "\n";
      });
      return 0;
    }

    if (dist_cmd->parsed()) {
      const Configuration q = config_from_flag(dist_config, dist_n);
      const double value = distortion(q, make_density(dist_density));
      write_output(dist_out, [&](std::ostream& os) {
        json j;
        j["n"] = q.size();
        j["distortion"] = value;
        os << j.dump() << "\n";
      });
      return 0;
    }

    if (step_cmd->parsed()) {
      const DensityModel h = make_density(step_density);
      const Configuration q0 = config_from_flag(step_config, step_n);
      const CentroidMode mode = parse_mode(step_mode);
      if (step_iters == 1) {
        if (step_format.empty()) step_format = "json";
        if (step_format != "json") {
          return usage_error("step: single steps emit JSON only");
        }
        const Configuration q1 = lloyd_step(q0, h, mode);
        write_output(step_out, [&](std::ostream& os) {
          json j;
          j["input"] = config_to_json(q0);
          j["output"] = config_to_json(q1);
          j["residual"] = config_distance(q1, q0);
          j["distortion_before"] = distortion(q0, h);
          j["distortion_after"] = distortion(q1, h);
          os << j.dump() << "\n";
        });
        return 0;
      }
      if (step_format.empty()) step_format = "csv";
      if (step_format != "csv") {
        return usage_error("step: orbits emit CSV only");
      }
      IterateOptions opts;
      opts.t_max = step_iters;
      opts.drift_removal = !step_no_drift;
      opts.mode = mode;
      const Orbit orbit = iterate(q0, h, opts);
      write_output(step_out, [&](std::ostream& os) { write_orbit_csv(os, orbit); });
      return orbit.failed() ? 2 : 0;
    }

    return usage_error("no subcommand selected");
  } catch (const std::domain_error& e) {
    std::cerr << "circloyd: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "circloyd: " << e.what() << "\n";
    return 2;
  }
}
