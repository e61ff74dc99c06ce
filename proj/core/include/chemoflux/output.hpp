#pragma once

// Deterministic text output: CSV tables, JSON summaries, and small
// dependency-free SVG line plots.  Nothing here stamps times or hostnames,
// so identical runs produce identical bytes.

#include <string>
#include <vector>

#include "chemoflux/diagnostics.hpp"
#include "chemoflux/picard.hpp"
#include "chemoflux/solver.hpp"

namespace chemoflux {

// Shortest round-trippable decimal form of x (printf %.17g).
std::string format_double(double x);

// Generic CSV: header row then one row per entry, all %.17g.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// Long-format field snapshots: t,x,u,v,a,b.
std::string fields_csv(const Trajectory& traj);

// One row per diagnostics record.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);

// End-of-run summary (JSON text): run size, final averages/extrema/argmax,
// positivity verdict, boundedness report.  config_echo, when nonempty, must
// be a JSON object (the canonical config text) and is embedded verbatim
// under "config" so a summary is self-describing.
std::string summary_json(const Trajectory& traj, const std::string& config_echo = "");

// Contraction studies (JSON text): one entry per horizon with deltas/ratios.
std::string picard_json(const std::vector<ContractionReport>& reports);

// Simple multi-series line plot.  Each series shares the x grid.
struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<PlotSeries>& series);

// Writes content to path, creating parent directories.  Throws Error on I/O
// failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace chemoflux
