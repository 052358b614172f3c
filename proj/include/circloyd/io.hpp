#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "circloyd/experiments.hpp"
#include "circloyd/linearization.hpp"
#include "circloyd/lyapunov.hpp"
#include "circloyd/quantizer.hpp"
#include "circloyd/sala.hpp"
#include "circloyd/stability.hpp"

namespace circloyd {

/// 17-significant-digit decimal form; round-trips any finite double exactly.
std::string format_double(double v);

// CSV emitters. All numbers go through format_double.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records);
void write_lyapunov_scan_csv(std::ostream& os, const std::vector<LyapunovScanRow>& rows);
void write_sala_csv(std::ostream& os, const SalaTrace& trace);
void write_orbit_csv(std::ostream& os, const Orbit& orbit);

std::string stability_csv_header();
std::string stability_csv_row(const StabilityReport& report);

// JSON emitters (serialized strings; field names follow the report structs).
std::string stability_json(const StabilityReport& report);
std::string lyapunov_json(const LyapunovReport& report);
std::string jacobian_json(const CirculantJacobian& jac, const ModeSpectrum& spectrum);
std::string critical_kappa_json(const CriticalKappaResult& result);

// Minimal plot description for the SVG emitter.
struct PlotSpec {
  enum class Kind { scatter, line };
  Kind kind = Kind::line;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
  std::vector<double> reference_lines;  // horizontal y = c, drawn dashed
};

/// Writes a standalone SVG plot; returns the number of non-finite points
/// dropped from the series.
int emit_svg(const PlotSpec& spec, std::ostream& os);

}  // namespace circloyd
