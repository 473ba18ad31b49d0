#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gbl/study_harness.hpp"

namespace gbl {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string report_csv(const ErrorReport& report) {
  std::ostringstream out;
  out << "omega,Q0,h,eta,max_error,rel_error,analytic_pred\n";
  for (const auto& r : report.rows)
    out << fmt(r.omega) << ',' << fmt(r.q0) << ',' << fmt(r.h) << ',' << fmt(r.eta) << ','
        << fmt(r.max_error) << ',' << fmt(r.rel_error) << ',' << fmt(r.analytic_pred)
        << '\n';
  return out.str();
}

std::string report_slopes_json(const ErrorReport& report) {
  nlohmann::ordered_json j;
  j["study"] = report.study;
  if (report.slope) {
    j["slope"] = report.slope->slope;
    j["slope_residual"] = report.slope->residual;
  }
  nlohmann::ordered_json metrics;
  for (const auto& [key, value] : report.metrics)
    metrics[key] = std::isfinite(value) ? nlohmann::ordered_json(value)
                                        : nlohmann::ordered_json(nullptr);
  j["metrics"] = metrics;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

namespace {

struct Series {
  std::vector<double> x, y;
  const char* color;
};

// Minimal log-log polyline chart; all coordinates emitted with fixed
// precision so output is byte-stable.
std::string svg_loglog(const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label) {
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  if (!(x_hi > 0.0) || !(y_hi > 0.0)) return "<svg xmlns='http://www.w3.org/2000/svg'/>\n";
  const double W = 640.0, H = 480.0, L = 70.0, R = 20.0, T = 20.0, B = 50.0;
  const double lx0 = std::log10(x_lo), lx1 = std::log10(x_hi);
  const double ly0 = std::log10(y_lo), ly1 = std::log10(y_hi);
  const double dx = lx1 > lx0 ? lx1 - lx0 : 1.0;
  const double dy = ly1 > ly0 ? ly1 - ly0 : 1.0;
  auto px = [&](double v) { return L + (std::log10(v) - lx0) / dx * (W - L - R); };
  auto py = [&](double v) { return H - B - (std::log10(v) - ly0) / dy * (H - T - B); };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='640' height='480' "
         "viewBox='0 0 640 480'>\n";
  out << "<rect x='0' y='0' width='640' height='480' fill='white'/>\n";
  char buf[160];
  // frame
  std::snprintf(buf, sizeof(buf),
                "<rect x='%.1f' y='%.1f' width='%.1f' height='%.1f' fill='none' "
                "stroke='black'/>\n",
                L, T, W - L - R, H - T - B);
  out << buf;
  // decade ticks
  for (int d = static_cast<int>(std::ceil(lx0 - 1e-9)); d <= std::floor(lx1 + 1e-9); ++d) {
    const double x = px(std::pow(10.0, d));
    std::snprintf(buf, sizeof(buf),
                  "<line x1='%.2f' y1='%.1f' x2='%.2f' y2='%.1f' stroke='gray' "
                  "stroke-dasharray='3,4'/>\n<text x='%.2f' y='%.1f' font-size='12' "
                  "text-anchor='middle'>1e%d</text>\n",
                  x, T, x, H - B, x, H - B + 16.0, d);
    out << buf;
  }
  for (int d = static_cast<int>(std::ceil(ly0 - 1e-9)); d <= std::floor(ly1 + 1e-9); ++d) {
    const double y = py(std::pow(10.0, d));
    std::snprintf(buf, sizeof(buf),
                  "<line x1='%.1f' y1='%.2f' x2='%.1f' y2='%.2f' stroke='gray' "
                  "stroke-dasharray='3,4'/>\n<text x='%.1f' y='%.2f' font-size='12' "
                  "text-anchor='end'>1e%d</text>\n",
                  L, y, W - R, y, L - 4.0, y + 4.0, d);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x='%.1f' y='%.1f' font-size='13' text-anchor='middle'>%s</text>\n",
                L + (W - L - R) / 2.0, H - 12.0, x_label.c_str());
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x='14' y='%.1f' font-size='13' text-anchor='middle' "
                "transform='rotate(-90 14 %.1f)'>%s</text>\n",
                T + (H - T - B) / 2.0, T + (H - T - B) / 2.0, y_label.c_str());
  out << buf;
  for (const auto& s : series) {
    out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
      out << buf;
    }
    out << "'/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      std::snprintf(buf, sizeof(buf), "<circle cx='%.2f' cy='%.2f' r='2.5' fill='%s'/>\n",
                    px(s.x[i]), py(s.y[i]), s.color);
      out << buf;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string report_svg(const ErrorReport& report) {
  std::vector<Series> series;
  Series measured{{}, {}, "#1f5fbf"};
  Series analytic{{}, {}, "#bf3f1f"};
  const bool q0_study = report.study == "q0-sweep";
  for (const auto& r : report.rows) {
    const double x = q0_study ? r.q0 : (report.study == "discretize" ? r.h : r.omega);
    const double y = q0_study ? r.rel_error : r.max_error;
    if (std::isfinite(y) && y > 0.0) {
      measured.x.push_back(x);
      measured.y.push_back(y);
    }
    if (std::isfinite(r.analytic_pred) && r.analytic_pred > 0.0) {
      analytic.x.push_back(x);
      analytic.y.push_back(r.analytic_pred);
    }
  }
  if (!measured.x.empty()) series.push_back(measured);
  if (!analytic.x.empty()) series.push_back(analytic);
  const std::string x_label =
      q0_study ? "Q0" : (report.study == "discretize" ? "h" : "omega");
  const std::string y_label = q0_study ? "relative error" : "max error";
  return svg_loglog(series, x_label, y_label);
}

void write_report(const ErrorReport& report, const StudyConfig& config,
                  const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string base = study_kind_name(config.kind);
  {
    std::ofstream out(fs::path(out_dir) / (base + ".csv"));
    if (!out) throw std::runtime_error("cannot write CSV under " + out_dir);
    out << report_csv(report);
  }
  {
    std::ofstream out(fs::path(out_dir) / (base + "_slopes.json"));
    out << report_slopes_json(report);
  }
  if (config.svg) {
    std::ofstream out(fs::path(out_dir) / (base + ".svg"));
    out << report_svg(report);
  }
}

}  // namespace gbl
