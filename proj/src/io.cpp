#include "circloyd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "circloyd/log.hpp"

namespace circloyd {

namespace {

using nlohmann::json;

json exponents_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "kappa,t,j,angle\n";
  for (const SweepRecord& r : records) {
    os << format_double(r.kappa) << ',' << r.t << ',' << r.j << ',' << format_double(r.angle)
       << '\n';
  }
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
  os << "kappa,lambda_min,F,bound\n";
  for (const ScanRecord& r : records) {
    os << format_double(r.kappa) << ',' << format_double(r.lambda_min) << ','
       << format_double(r.F) << ',' << format_double(r.bound) << '\n';
  }
}

void write_lyapunov_scan_csv(std::ostream& os, const std::vector<LyapunovScanRow>& rows) {
  Eigen::Index n = 0;
  for (const LyapunovScanRow& row : rows) n = std::max(n, row.exponents.size());
  os << "kappa";
  for (Eigen::Index j = 1; j <= n; ++j) os << ",lambda_" << j;
  os << '\n';
  for (const LyapunovScanRow& row : rows) {
    os << format_double(row.kappa);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v =
          (j < row.exponents.size()) ? row.exponents(j) : std::numeric_limits<double>::quiet_NaN();
      os << ',' << format_double(v);
    }
    os << '\n';
  }
}

void write_sala_csv(std::ostream& os, const SalaTrace& trace) {
  os << "t,residual,rho,perturbed\n";
  for (std::size_t t = 0; t < trace.residuals.size(); ++t) {
    os << t << ',' << format_double(trace.residuals[t]) << ',' << format_double(trace.rho[t])
       << ',' << (trace.perturbed_at(static_cast<int>(t)) ? 1 : 0) << '\n';
  }
}

void write_orbit_csv(std::ostream& os, const Orbit& orbit) {
  os << "t,j,angle,residual,distortion\n";
  for (std::size_t t = 0; t < orbit.states.size(); ++t) {
    const Configuration& state = orbit.states[t];
    const double residual = (t == 0) ? 0.0 : orbit.residuals[t - 1];  // step into state t
    for (Eigen::Index j = 0; j < state.size(); ++j) {
      os << t << ',' << j << ',' << format_double(state[j]) << ',' << format_double(residual)
         << ',' << format_double(orbit.distortions[t]) << '\n';
    }
  }
}

std::string stability_csv_header() { return "n,kappa,F,bound,m_star,lambda_min,verdict"; }

std::string stability_csv_row(const StabilityReport& r) {
  std::string row = std::to_string(r.n);
  row += ',';
  row += format_double(r.kappa);
  row += ',';
  row += format_double(r.F);
  row += ',';
  row += format_double(r.bound);
  row += ',';
  row += std::to_string(r.m_star);
  row += ',';
  row += format_double(r.lambda_min);
  row += ',';
  row += to_string(r.verdict);
  return row;
}

std::string stability_json(const StabilityReport& r) {
  json j;
  j["n"] = r.n;
  j["kappa"] = r.kappa;
  j["F"] = r.F;
  j["bound"] = r.bound;
  j["m_star"] = r.m_star;
  j["lambda_min"] = r.lambda_min;
  j["verdict"] = to_string(r.verdict);
  j["margin"] = r.margin;
  return j.dump();
}

std::string lyapunov_json(const LyapunovReport& r) {
  json j;
  j["exponents"] = exponents_to_json(r.exponents);
  j["floored"] = r.floored;
  j["n_iter"] = r.n_iter;
  j["n_trans"] = r.n_trans;
  j["kappa"] = r.kappa;
  j["seed"] = r.seed;
  j["max_orthogonal"] = r.max_orthogonal;
  return j.dump();
}

std::string jacobian_json(const CirculantJacobian& jac, const ModeSpectrum& spectrum) {
  json j;
  j["n"] = jac.n;
  j["alpha"] = jac.alpha;
  j["beta"] = jac.beta;
  j["eigenvalues"] = exponents_to_json(spectrum.eigenvalues);
  return j.dump();
}

std::string critical_kappa_json(const CriticalKappaResult& r) {
  json j;
  if (r.found) {
    j["status"] = "root";
    j["kappa_c"] = r.kappa_c;
  } else {
    j["status"] = "no_root";
  }
  j["max_F"] = r.max_F;
  return j.dump();
}

int emit_svg(const PlotSpec& spec, std::ostream& os) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(spec.points.size());
  int dropped = 0;
  for (const auto& [x, y] : spec.points) {
    if (std::isfinite(x) && std::isfinite(y)) {
      pts.emplace_back(x, y);
    } else {
      ++dropped;
    }
  }
  if (dropped > 0) {
    log::info("emit_svg: dropped " + std::to_string(dropped) + " non-finite points");
  }

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& [x, y] : pts) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  for (double y : spec.reference_lines) {
    if (!std::isfinite(y)) continue;
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
  }
  if (!std::isfinite(y_lo)) {
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  const double x_pad = 0.05 * (x_hi - x_lo);
  const double y_pad = 0.05 * (y_hi - y_lo);
  x_lo -= x_pad;
  x_hi += x_pad;
  y_lo -= y_pad;
  y_hi += y_pad;

  const double width = 800.0;
  const double height = 560.0;
  const double ml = 72.0, mr = 24.0, mt = 40.0, mb = 56.0;
  auto sx = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
  auto sy = [&](double y) { return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    os << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << xml_escape(spec.title) << "</text>\n";
  }
  // axes
  os << "  <line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
     << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
     << height - mb << "\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / ticks;
    const double fy = y_lo + (y_hi - y_lo) * i / ticks;
    os << "  <line x1=\"" << sx(fx) << "\" y1=\"" << height - mb << "\" x2=\"" << sx(fx)
       << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << sx(fx) << "\" y=\"" << height - mb + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(fx) << "</text>\n";
    os << "  <line x1=\"" << ml - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << ml << "\" y2=\""
       << sy(fy) << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << ml - 8 << "\" y=\"" << sy(fy) + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(fy) << "</text>\n";
  }
  if (!spec.x_label.empty()) {
    os << "  <text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(spec.x_label)
       << "</text>\n";
  }
  if (!spec.y_label.empty()) {
    os << "  <text x=\"18\" y=\"" << (mt + height - mb) / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
       << (mt + height - mb) / 2 << ")\">" << xml_escape(spec.y_label) << "</text>\n";
  }
  for (double y : spec.reference_lines) {
    if (!std::isfinite(y)) continue;
    os << "  <line class=\"ref\" x1=\"" << ml << "\" y1=\"" << sy(y) << "\" x2=\"" << width - mr
       << "\" y2=\"" << sy(y) << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
  }
  if (spec.kind == PlotSpec::Kind::line && !pts.empty()) {
    os << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) os << ' ';
      os << sx(pts[i].first) << ',' << sy(pts[i].second);
    }
    os << "\"/>\n";
  } else {
    for (const auto& [x, y] : pts) {
      os << "  <circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
         << "\" r=\"2\" fill=\"steelblue\"/>\n";
    }
  }
  os << "</svg>\n";
  return dropped;
}

}  // namespace circloyd
