#ifndef GBL_STUDY_HARNESS_HPP
#define GBL_STUDY_HARNESS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbl/medium.hpp"
#include "gbl/source_curve.hpp"
#include "gbl/types.hpp"

namespace gbl {

enum class StudyKind { ConvergeOmega, Discretize, Q0Sweep, FieldDump };

// One experiment description, normally loaded from a JSON config file.
struct StudyConfig {
  StudyKind kind = StudyKind::ConvergeOmega;
  std::string medium_name = "constant";     // "constant" | "waveguide"
  double medium_c0 = 1.0;
  double medium_amplitude = 0.2;
  double medium_kx = 0.0, medium_ky = 0.0;  // 0 -> pi/2 defaults
  std::string source_name = "flat";         // flat | oblique | circle | parabola
  double oblique_angle_deg = 0.0;
  std::vector<double> omegas{100.0, 200.0, 400.0, 800.0};
  double q0 = 1.0;
  std::vector<double> q0_list;              // q0 sweep grid (empty -> default)
  double h_fraction = 0.5;                  // h = fraction * eta0
  std::vector<double> h_fractions{0.5, 0.25, 0.125, 0.0625};
  double y_star = 2.0;
  double receiver_x_min = -1.5, receiver_x_max = 1.5;
  int receiver_points = 400;
  double alpha = 1.0;
  double dt = 1e-3;
  int refine = 32;
  bool single_beam = false;
  double beam_angle_deg = 60.0;             // single-beam control shot angle
  std::string reference = "auto";           // auto | beam | go
  int workers = 1;
  bool svg = true;
  int map_y_points = 0;                     // field study: 0 -> line only
  double map_y_min = 0.2, map_y_max = 2.0;

  Medium make_medium() const;               // domain box sized to the study
  SourceCurve make_source() const;
};

// Strict parser: unknown keys are rejected.
StudyConfig parse_study_config(const std::string& json_text);
StudyConfig load_study_config(const std::string& path);
StudyConfig default_config(StudyKind kind);
std::string study_kind_name(StudyKind kind);

struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0;  // max absolute residual of the fit
};

// Ordinary least squares on (x, y) or (log x, log y). Throws on fewer than
// two points, non-monotone x, or non-positive values under log.
SlopeFit fit_slope(std::span<const double> x, std::span<const double> y, bool log_log);

struct ErrorRow {
  double omega = 0.0;
  double q0 = 0.0;
  double h = 0.0;
  double eta = 0.0;
  double max_error = 0.0;
  double rel_error = 0.0;
  double analytic_pred = 0.0;  // NaN when not applicable
};

struct ErrorReport {
  std::string study;
  std::vector<ErrorRow> rows;
  std::optional<SlopeFit> slope;              // primary log-log fit
  std::map<std::string, double> metrics;      // named scalars for the sidecar
  int warnings = 0;
};

ErrorReport run_converge_omega(const StudyConfig& config);
ErrorReport run_discretize(const StudyConfig& config);
ErrorReport run_q0_sweep(const StudyConfig& config);

// Writes beam and GO fields along the receiver line (and optionally a 2D |u|
// map) under out_dir; returns the report with summary metrics.
ErrorReport run_field_dump(const StudyConfig& config, const std::string& out_dir);

ErrorReport run_study(const StudyConfig& config, const std::string& out_dir);

// Deterministic text emission (CSV is the authoritative output).
std::string report_csv(const ErrorReport& report);
std::string report_slopes_json(const ErrorReport& report);
std::string report_svg(const ErrorReport& report);
void write_report(const ErrorReport& report, const StudyConfig& config,
                  const std::string& out_dir);

}  // namespace gbl

#endif
