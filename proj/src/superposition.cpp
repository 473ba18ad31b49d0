#include "gbl/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gbl/parallel.hpp"

namespace gbl {

double SuperposConfig::eta0() const { return std::sqrt(2.0 * Q0 / omega); }

double SuperposConfig::initial_amplitude() const {
  if (initial_amplitude_override != 0.0) return initial_amplitude_override;
  return 1.0 / (std::sqrt(std::numbers::pi * omega) * eta0());
}

void SuperposConfig::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("superposition requires omega > 0");
  if (!(Q0 > 0.0)) throw std::invalid_argument("superposition requires Q0 > 0");
  if (!(h > 0.0)) throw std::invalid_argument("superposition requires beam spacing h > 0");
  if (!(h < eta0())) {
    std::ostringstream msg;
    msg << "beam spacing h = " << h << " must satisfy h < eta0 = (2 Q0/omega)^{1/2} = "
        << eta0();
    throw std::invalid_argument(msg.str());
  }
  if (!(s_max >= s_min)) throw std::invalid_argument("superposition requires s_max >= s_min");
  if (!(dt > 0.0)) throw std::invalid_argument("superposition requires dt > 0");
  if (receiver_xs.empty())
    throw std::invalid_argument("superposition requires at least one receiver abscissa");
}

namespace {

double auto_trace_T(const SuperposConfig& cfg, const Medium& medium,
                    const SourceCurve& source, const std::vector<double>& s_values) {
  double t_need = 0.0;
  for (double s : s_values) {
    const double path = (cfg.y_star - source.y0(s)) /
                        std::max(0.15, std::sin(source.theta0(s)));
    t_need = std::max(t_need, path);
  }
  return 1.5 * t_need / medium.min_speed() + 0.5;
}

}  // namespace

BeamBundle plane_wave_bundle(const Medium& medium, const SuperposConfig& config,
                             const SourceCurve& source) {
  config.validate();

  BeamBundle bundle;
  bundle.config = config;
  bundle.medium = medium;
  bundle.source = source;

  // Beam stations s_j = j h clipped to [s_min, s_max] and the source chart.
  const double lim = source.s_limit();
  const double lo = std::max(config.s_min, -lim);
  const double hi = std::min(config.s_max, lim);
  const long j_lo = static_cast<long>(std::ceil(lo / config.h - 1e-12));
  const long j_hi = static_cast<long>(std::floor(hi / config.h + 1e-12));
  std::vector<double> s_values;
  for (long j = j_lo; j <= j_hi; ++j) s_values.push_back(static_cast<double>(j) * config.h);
  bundle.beams.resize(s_values.size());

  const double T = config.trace_T > 0.0
                       ? config.trace_T
                       : auto_trace_T(config, medium, source, s_values);
  const Complex A_init = config.initial_amplitude();

  parallel_for(s_values.size(), config.workers, [&](std::size_t i) {
    BundleBeam& beam = bundle.beams[i];
    beam.s = s_values[i];
    const Vec2 start = source.point(beam.s);
    beam.trace = trace_beam(medium, start.x, start.y, source.theta0(beam.s),
                            Complex(config.Q0, 0.0), config.P0, T, config.dt, 0.0);
    beam.trace.s_param = beam.s;
    beam.crossing = find_crossing(beam.trace, medium, config.y_star);
    if (beam.crossing)
      beam.amp_at_crossing =
          amplitude_on_ray(beam.trace, medium, beam.crossing->sample, A_init);
    if (!config.keep_traces) {
      beam.trace.samples.clear();
      beam.trace.samples.shrink_to_fit();
    }
  });

  // Crossings must be strictly monotone in s: a fold marks a caustic on the
  // receiver and invalidates the whole construction.
  double last_X = 0.0;
  bool have_last = false;
  for (const auto& beam : bundle.beams) {
    if (!beam.crossing) {
      ++bundle.miss_count;
      continue;
    }
    if (have_last && !(beam.crossing->X > last_X))
      throw std::runtime_error(
          "plane_wave_bundle: crossing abscissas not strictly monotone in s (caustic)");
    last_X = beam.crossing->X;
    have_last = true;
  }
  return bundle;
}

ComplexFieldSamples field_discrete(const BeamBundle& bundle) {
  const SuperposConfig& cfg = bundle.config;
  ComplexFieldSamples out;
  out.xs = cfg.receiver_xs;
  out.values.assign(out.xs.size(), Complex(0.0, 0.0));

  const double scale = std::sqrt(cfg.omega) * cfg.h;
  const Cutoff cutoff(cfg.alpha);
  parallel_for(out.xs.size(), cfg.workers, [&](std::size_t i) {
    Complex acc(0.0, 0.0);
    for (const auto& beam : bundle.beams) {  // fixed order: bit-reproducible
      if (!beam.crossing) continue;
      acc += eval_beam(out.xs[i], cfg.y_star, *beam.crossing, bundle.medium, cfg.omega,
                       beam.amp_at_crossing, cutoff);
    }
    out.values[i] = scale * acc;
  });
  return out;
}

ComplexFieldSamples field_quadrature(const BeamBundle& bundle, int refine) {
  if (refine < 1) throw std::invalid_argument("field_quadrature requires refine >= 1");
  SuperposConfig cfg = bundle.config;
  cfg.h = bundle.config.h / static_cast<double>(refine);
  cfg.keep_traces = false;  // quadrature bundles are traced fresh and discarded
  const BeamBundle fine = plane_wave_bundle(bundle.medium, cfg, bundle.source);
  return field_discrete(fine);
}

}  // namespace gbl
