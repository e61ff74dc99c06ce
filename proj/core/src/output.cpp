#include "chemoflux/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "chemoflux/errors.hpp"

namespace chemoflux {

using json = nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream oss;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) oss << ',';
    oss << header[i];
  }
  oss << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) oss << ',';
      oss << format_double(row[i]);
    }
    oss << '\n';
  }
  return oss.str();
}

std::string fields_csv(const Trajectory& traj) {
  std::ostringstream oss;
  oss << "t,x,u,v,a,b\n";
  for (const State& s : traj.snapshots) {
    const Mesh& mesh = *s.u.mesh;
    for (int i = 0; i < mesh.n_cells(); ++i) {
      oss << format_double(s.t) << ',' << format_double(mesh.cell_center(i)) << ','
          << format_double(s.u[i]) << ',' << format_double(s.v[i]) << ','
          << format_double(s.a[i]) << ',' << format_double(s.b[i]) << '\n';
    }
  }
  return oss.str();
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
  const std::vector<std::string> header = {
      "t",        "min_u",    "argmin_u", "min_v",        "argmin_v",     "min_a",
      "argmin_a", "min_b",    "argmin_b", "ubar",         "vbar",         "abar",
      "bbar",     "l2_u",     "l2_v",     "h1_a",         "h1_b",         "energy",
      "u_right",  "v_left",   "b_left",   "flux_g",       "flux_h",       "argmax_u",
      "argmax_v", "right_mass_u", "right_mass_v"};
  std::vector<std::vector<double>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    rows.push_back({r.t,
                    r.min_u,
                    static_cast<double>(r.argmin_u),
                    r.min_v,
                    static_cast<double>(r.argmin_v),
                    r.min_a,
                    static_cast<double>(r.argmin_a),
                    r.min_b,
                    static_cast<double>(r.argmin_b),
                    r.ubar,
                    r.vbar,
                    r.abar,
                    r.bbar,
                    r.l2_u,
                    r.l2_v,
                    r.h1_a,
                    r.h1_b,
                    r.energy,
                    r.u_right,
                    r.v_left,
                    r.b_left,
                    r.flux_g,
                    r.flux_h,
                    static_cast<double>(r.argmax_u),
                    static_cast<double>(r.argmax_v),
                    r.right_mass_u,
                    r.right_mass_v});
  }
  return csv_table(header, rows);
}

std::string summary_json(const Trajectory& traj, const std::string& config_echo) {
  json j;
  if (!config_echo.empty()) j["config"] = json::parse(config_echo);
  j["cells"] = traj.snapshots.empty() ? 0 : traj.snapshots.front().u.mesh->n_cells();
  j["steps"] = traj.total_steps;
  j["snapshots"] = traj.snapshots.size();
  j["records"] = traj.diagnostics.size();
  j["scheme"] = traj.config.scheme == AdvectionScheme::Upwind ? "upwind" : "central";
  if (!traj.diagnostics.empty()) {
    const DiagnosticsRecord& r = traj.diagnostics.back();
    j["t_end"] = r.t;
    j["final"] = {{"ubar", r.ubar},     {"vbar", r.vbar},       {"abar", r.abar},
                  {"bbar", r.bbar},     {"min_u", r.min_u},     {"min_v", r.min_v},
                  {"min_a", r.min_a},   {"min_b", r.min_b},     {"l2_u", r.l2_u},
                  {"l2_v", r.l2_v},     {"h1_a", r.h1_a},       {"h1_b", r.h1_b},
                  {"energy", r.energy}, {"u_right", r.u_right}, {"v_left", r.v_left},
                  {"argmax_u", r.argmax_u}, {"argmax_v", r.argmax_v},
                  {"right_mass_u", r.right_mass_u}, {"right_mass_v", r.right_mass_v}};
    const PositivityVerdict pv = positivity_verdict(traj.diagnostics, traj.config.positivity_tol);
    j["positivity"] = {{"pass", pv.pass},
                       {"field", pv.field},
                       {"cell", pv.cell},
                       {"time", pv.time},
                       {"value", pv.value}};
    const BoundednessReport br = boundedness_report(traj.diagnostics);
    j["boundedness"] = {{"all_finite", br.all_finite},
                        {"sup_l2_u", br.sup_l2_u},
                        {"sup_l2_v", br.sup_l2_v},
                        {"sup_h1_a", br.sup_h1_a},
                        {"sup_h1_b", br.sup_h1_b},
                        {"sup_energy", br.sup_energy},
                        {"energy_growth", br.energy_growth},
                        {"possible_blowup", br.possible_blowup}};
  }
  return j.dump(2) + "\n";
}

std::string picard_json(const std::vector<ContractionReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"horizon", r.horizon},
                   {"time_steps", r.time_steps},
                   {"deltas", r.deltas},
                   {"ratios", r.ratios},
                   {"ratio_threshold", r.ratio_threshold},
                   {"contractive", r.contractive}});
  }
  return json{{"studies", arr}}.dump(2) + "\n";
}

namespace {

std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<PlotSeries>& series) {
  const double width = 640.0, height = 400.0;
  const double left = 64.0, right = 616.0, top = 40.0, bottom = 352.0;

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool seen = false;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!seen) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        seen = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
  const double ypad = (ymax - ymin < 1e-300) ? std::max(1.0, std::abs(ymin)) * 0.1
                                             : (ymax - ymin) * 0.05;
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto py = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  const int n_colors = 6;

  std::ostringstream oss;
  oss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  oss << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  oss << "<text x=\"" << (width / 2) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\""
      << " text-anchor=\"middle\">" << xml_escape(title) << "</text>\n";

  // axes
  oss << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";
  oss << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    oss << "<line x1=\"" << fmt_px(px(xv)) << "\" y1=\"" << bottom << "\" x2=\"" << fmt_px(px(xv))
        << "\" y2=\"" << (bottom + 5) << "\" stroke=\"black\"/>\n";
    oss << "<text x=\"" << fmt_px(px(xv)) << "\" y=\"" << (bottom + 20)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(xv)
        << "</text>\n";
    oss << "<line x1=\"" << (left - 5) << "\" y1=\"" << fmt_px(py(yv)) << "\" x2=\"" << left
        << "\" y2=\"" << fmt_px(py(yv)) << "\" stroke=\"black\"/>\n";
    oss << "<text x=\"" << (left - 8) << "\" y=\"" << fmt_px(py(yv) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(yv)
        << "</text>\n";
  }
  oss << "<text x=\"" << ((left + right) / 2) << "\" y=\"" << (height - 8)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
      << xml_escape(x_label) << "</text>\n";
  oss << "<text x=\"16\" y=\"" << ((top + bottom) / 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 16 " << ((top + bottom) / 2) << ")\">" << xml_escape(y_label)
      << "</text>\n";

  int idx = 0;
  for (const auto& s : series) {
    const char* color = palette[idx % n_colors];
    oss << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
    bool pen = false;
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        pen = false;
        continue;
      }
      oss << (pen ? 'L' : 'M') << fmt_px(px(s.x[i])) << ' ' << fmt_px(py(s.y[i]));
      pen = true;
    }
    oss << "\"/>\n";
    const double ly = top + 14.0 * idx;
    oss << "<line x1=\"" << (right - 110) << "\" y1=\"" << fmt_px(ly) << "\" x2=\""
        << (right - 86) << "\" y2=\"" << fmt_px(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    oss << "<text x=\"" << (right - 80) << "\" y=\"" << fmt_px(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(s.name) << "</text>\n";
    ++idx;
  }
  oss << "</svg>\n";
  return oss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + p.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace chemoflux
