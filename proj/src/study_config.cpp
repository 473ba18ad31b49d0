#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gbl/study_harness.hpp"

namespace gbl {

std::string study_kind_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::ConvergeOmega: return "converge-omega";
    case StudyKind::Discretize: return "discretize";
    case StudyKind::Q0Sweep: return "q0-sweep";
    case StudyKind::FieldDump: return "field";
  }
  return "unknown";
}

namespace {

StudyKind kind_from_name(const std::string& name) {
  if (name == "converge-omega") return StudyKind::ConvergeOmega;
  if (name == "discretize") return StudyKind::Discretize;
  if (name == "q0-sweep") return StudyKind::Q0Sweep;
  if (name == "field") return StudyKind::FieldDump;
  throw std::invalid_argument("unknown study kind: " + name);
}

std::vector<double> default_q0_list(double y_star) {
  // Five decades on each side of y*: wide enough for the asymptotic-slope
  // fits, with the central two decades eligible for measurement.
  std::vector<double> list;
  for (int k = 0; k <= 40; ++k)
    list.push_back(y_star * std::pow(10.0, -5.0 + 0.25 * static_cast<double>(k)));
  return list;
}

}  // namespace

StudyConfig default_config(StudyKind kind) {
  StudyConfig cfg;
  cfg.kind = kind;
  switch (kind) {
    case StudyKind::ConvergeOmega:
      break;  // struct defaults are the constant-medium omega sweep
    case StudyKind::Discretize:
      cfg.omegas = {100.0};
      break;
    case StudyKind::Q0Sweep:
      cfg.omegas = {400.0};
      cfg.y_star = 3.0;
      cfg.receiver_x_min = -2.65;
      cfg.receiver_x_max = 2.65;
      cfg.q0_list = default_q0_list(3.0);
      break;
    case StudyKind::FieldDump:
      cfg.omegas = {100.0};
      break;
  }
  return cfg;
}

StudyConfig parse_study_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + err.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
  if (!j.contains("study")) throw std::invalid_argument("config requires a \"study\" key");

  StudyConfig cfg = default_config(kind_from_name(j.at("study").get<std::string>()));

  bool q0_list_given = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "study") {
    } else if (key == "medium") {
      cfg.medium_name = value.get<std::string>();
      if (cfg.medium_name != "constant" && cfg.medium_name != "waveguide")
        throw std::invalid_argument("medium must be \"constant\" or \"waveguide\"");
    } else if (key == "medium_c0") {
      cfg.medium_c0 = value.get<double>();
    } else if (key == "medium_amplitude") {
      cfg.medium_amplitude = value.get<double>();
    } else if (key == "medium_kx") {
      cfg.medium_kx = value.get<double>();
    } else if (key == "medium_ky") {
      cfg.medium_ky = value.get<double>();
    } else if (key == "source") {
      cfg.source_name = value.get<std::string>();
      if (cfg.source_name != "flat" && cfg.source_name != "oblique" &&
          cfg.source_name != "circle" && cfg.source_name != "parabola")
        throw std::invalid_argument("source must be flat, oblique, circle or parabola");
    } else if (key == "oblique_angle_deg") {
      cfg.oblique_angle_deg = value.get<double>();
    } else if (key == "omegas") {
      cfg.omegas = value.get<std::vector<double>>();
    } else if (key == "q0") {
      cfg.q0 = value.get<double>();
    } else if (key == "q0_list") {
      cfg.q0_list = value.get<std::vector<double>>();
      q0_list_given = true;
    } else if (key == "h_fraction") {
      cfg.h_fraction = value.get<double>();
    } else if (key == "h_fractions") {
      cfg.h_fractions = value.get<std::vector<double>>();
    } else if (key == "y_star") {
      cfg.y_star = value.get<double>();
    } else if (key == "receiver_x_min") {
      cfg.receiver_x_min = value.get<double>();
    } else if (key == "receiver_x_max") {
      cfg.receiver_x_max = value.get<double>();
    } else if (key == "receiver_points") {
      cfg.receiver_points = value.get<int>();
    } else if (key == "alpha") {
      cfg.alpha = value.get<double>();
    } else if (key == "dt") {
      cfg.dt = value.get<double>();
    } else if (key == "refine") {
      cfg.refine = value.get<int>();
    } else if (key == "single_beam") {
      cfg.single_beam = value.get<bool>();
    } else if (key == "beam_angle_deg") {
      cfg.beam_angle_deg = value.get<double>();
    } else if (key == "reference") {
      cfg.reference = value.get<std::string>();
      if (cfg.reference != "auto" && cfg.reference != "beam" && cfg.reference != "go")
        throw std::invalid_argument("reference must be auto, beam or go");
    } else if (key == "workers") {
      cfg.workers = value.get<int>();
    } else if (key == "svg") {
      cfg.svg = value.get<bool>();
    } else if (key == "map_y_points") {
      cfg.map_y_points = value.get<int>();
    } else if (key == "map_y_min") {
      cfg.map_y_min = value.get<double>();
    } else if (key == "map_y_max") {
      cfg.map_y_max = value.get<double>();
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  if (cfg.kind == StudyKind::Q0Sweep && !q0_list_given)
    cfg.q0_list = default_q0_list(cfg.y_star);

  if (cfg.omegas.empty()) throw std::invalid_argument("omegas must not be empty");
  for (std::size_t i = 1; i < cfg.omegas.size(); ++i)
    if (!(cfg.omegas[i] > cfg.omegas[i - 1]))
      throw std::invalid_argument("omegas must be strictly increasing");
  if (!(cfg.receiver_x_max > cfg.receiver_x_min))
    throw std::invalid_argument("receiver window is empty");
  if (cfg.receiver_points < 2) throw std::invalid_argument("receiver_points must be >= 2");
  if (!(cfg.q0 > 0.0)) throw std::invalid_argument("q0 must be positive");
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  return cfg;
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_study_config(buf.str());
}

Medium StudyConfig::make_medium() const {
  Medium m = medium_name == "constant"
                 ? Medium::constant(medium_c0)
                 : Medium::waveguide(medium_amplitude, medium_kx, medium_ky);
  // Size the domain box to everything a study can touch: traces run past the
  // receiver line and sources may sit below y = 0.
  DomainBox box;
  box.x_min = receiver_x_min - 25.0;
  box.x_max = receiver_x_max + 25.0;
  box.y_min = -2.5;
  box.y_max = y_star + 8.0;
  m.set_domain(box);
  return m;
}

SourceCurve StudyConfig::make_source() const {
  if (source_name == "flat") return SourceCurve::flat();
  if (source_name == "oblique")
    return SourceCurve::oblique(oblique_angle_deg * std::numbers::pi / 180.0);
  if (source_name == "circle") return SourceCurve::circle();
  return SourceCurve::parabola();
}

}  // namespace gbl
