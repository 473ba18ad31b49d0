#include "gbl/reference_fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gbl/beam_model.hpp"
#include "gbl/cc_analysis.hpp"
#include "gbl/parallel.hpp"
#include "gbl/ray_engine.hpp"

namespace gbl {

namespace {

// Monotone cubic (Fritsch-Carlson) interpolation on strictly increasing knots.
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2) throw std::invalid_argument("pchip requires at least two knots");
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(x_[i + 1] > x_[i])) throw std::invalid_argument("pchip knots must increase");
      delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    }
    d_.assign(n, 0.0);
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;  // local extremum: flat tangent preserves monotonicity
      } else {
        const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
        const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
  }

  double operator()(double q) const {
    if (q < x_.front() || q > x_.back())
      throw std::domain_error("pchip: query outside the interpolation range");
    const auto it = std::upper_bound(x_.begin(), x_.end(), q);
    const std::size_t i = std::min<std::size_t>(
        x_.size() - 2, static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                           0, std::distance(x_.begin(), it) - 1)));
    const double hseg = x_[i + 1] - x_[i];
    const double u = (q - x_[i]) / hseg;
    const double u2 = u * u, u3 = u2 * u;
    return (2.0 * u3 - 3.0 * u2 + 1.0) * y_[i] + (u3 - 2.0 * u2 + u) * hseg * d_[i] +
           (-2.0 * u3 + 3.0 * u2) * y_[i + 1] + (u3 - u2) * hseg * d_[i + 1];
  }

 private:
  std::vector<double> x_, y_;
  std::vector<double> d_;
};

}  // namespace

ComplexFieldSamples GOSolution::field(double omega) const {
  ComplexFieldSamples out;
  out.xs = xs;
  out.values.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.values[i] = amplitude[i] * std::exp(Complex(0.0, omega * phase[i]));
  return out;
}

GOSolution go_field(const Medium& medium, const SourceCurve& source, double y_star,
                    double omega, double fan_spacing, double s_min, double s_max,
                    std::span<const double> receiver_xs, double dt, int workers) {
  if (!(fan_spacing > 0.0)) throw std::invalid_argument("go_field requires fan_spacing > 0");
  if (!(omega > 0.0)) throw std::invalid_argument("go_field requires omega > 0");

  const double lim = source.s_limit();
  const double lo = std::max(s_min, -lim);
  const double hi = std::min(s_max, lim);
  const long n = static_cast<long>(std::floor((hi - lo) / fan_spacing + 1e-9));
  if (n < 3) throw std::invalid_argument("go_field: fan has fewer than three rays");

  struct FanHit {
    bool ok = false;
    double X = 0.0, phase = 0.0;
    double amplitude = 0.0;
  };
  std::vector<FanHit> hits(static_cast<std::size_t>(n) + 1);

  // Worst-case travel time over the fan.
  double t_need = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double s = lo + static_cast<double>(k) * fan_spacing;
    t_need = std::max(t_need, (y_star - source.y0(s)) /
                                  std::max(0.15, std::sin(source.theta0(s))));
  }
  const double T = 1.5 * t_need / medium.min_speed() + 0.5;

  parallel_for(hits.size(), workers, [&](std::size_t k) {
    const double s = lo + static_cast<double>(k) * fan_spacing;
    const Vec2 start = source.point(s);
    // Real dynamic data matched to the orthogonal fan geometry: Q0 is the
    // initial perpendicular spreading, P0 its rate (the wavefront curvature).
    const double yp = source.dy0(s);
    const double q0 = std::sqrt(1.0 + yp * yp);
    const double p0 = -source.ddy0(s) / (1.0 + yp * yp);
    RayTrace ray = trace_beam(medium, start.x, start.y, source.theta0(s),
                              Complex(q0, 0.0), Complex(p0, 0.0), T, dt, 0.0,
                              /*require_gaussian=*/false);
    ray.s_param = s;
    const auto crossing = find_crossing(ray, medium, y_star);
    if (!crossing) return;
    if (!(crossing->sample.Q.real() > 0.0))
      throw std::runtime_error("go_field: ray tube collapsed before the receiver (caustic)");
    const Complex amp = amplitude_on_ray(ray, medium, crossing->sample, Complex(1.0, 0.0));
    hits[k] = {true, crossing->X, crossing->sample.phase_on_ray, amp.real()};
  });

  std::vector<double> X, phase, amp;
  for (const auto& hit : hits) {
    if (!hit.ok) continue;
    if (!X.empty() && !(hit.X > X.back()))
      throw std::runtime_error("go_field: fan crossings not monotone (caustic)");
    X.push_back(hit.X);
    phase.push_back(hit.phase);
    amp.push_back(hit.amplitude);
  }
  if (X.size() < 3) throw std::runtime_error("go_field: too few rays reach the receiver");

  const Pchip phase_interp(X, phase);
  const Pchip amp_interp(X, amp);
  GOSolution go;
  go.xs.assign(receiver_xs.begin(), receiver_xs.end());
  go.phase.resize(go.xs.size());
  go.amplitude.resize(go.xs.size());
  for (std::size_t i = 0; i < go.xs.size(); ++i) {
    go.phase[i] = phase_interp(go.xs[i]);
    go.amplitude[i] = Complex(amp_interp(go.xs[i]), 0.0);
  }
  return go;
}

ComplexFieldSamples exact_field_constant(double omega, double y_star,
                                         std::span<const double> xs) {
  ComplexFieldSamples out;
  out.xs.assign(xs.begin(), xs.end());
  out.values.assign(xs.size(), std::exp(Complex(0.0, omega * y_star)));
  return out;
}

ComplexFieldSamples beam_reference_field(const BeamBundle& bundle) {
  const SuperposConfig& cfg = bundle.config;
  if (!bundle.medium.is_constant() ||
      std::abs(bundle.medium.constant_speed() - 1.0) > 1e-14)
    throw std::invalid_argument(
        "beam_reference_field requires the constant unit-speed medium");
  if (cfg.P0 != Complex(0.0, 1.0))
    throw std::invalid_argument("beam_reference_field requires P0 = i");

  // The quartic ray-centered expansion is only a valid beam model while the
  // transverse exponent keeps a positive imaginary part across the cutoff
  // support; reject cutoff radii beyond that region.
  const Cutoff cutoff(cfg.alpha);
  for (const auto& beam : bundle.beams) {
    if (!beam.crossing) continue;
    const TaylorCoeffs tc = taylor_coeffs(beam.crossing->t_cross, cfg.Q0);
    const double a2 = cfg.alpha * cfg.alpha;
    const double im = 0.5 * a2 * tc.phi2.imag() + a2 * a2 * tc.phi4.imag() / 24.0;
    if (!(im > 0.0))
      throw std::invalid_argument(
          "beam_reference_field: cutoff radius exceeds the quartic reference's "
          "decay region; reduce alpha");
  }

  ComplexFieldSamples out;
  out.xs = cfg.receiver_xs;
  out.values.assign(out.xs.size(), Complex(0.0, 0.0));
  const double scale = std::sqrt(cfg.omega) * cfg.h;
  const Complex A_init = cfg.initial_amplitude();

  parallel_for(out.xs.size(), cfg.workers, [&](std::size_t i) {
    const double x = out.xs[i];
    Complex acc(0.0, 0.0);
    for (const auto& beam : bundle.beams) {
      if (!beam.crossing) continue;
      const double co = cutoff(beam.crossing->X - x);
      if (co == 0.0) continue;
      const double r = x - beam.crossing->X;
      const double th = beam.crossing->sample.theta;
      // Exact ray-centered coordinates of (x, y*) for a straight unit-speed ray.
      const double t = beam.crossing->t_cross + r * std::cos(th);
      const double nn = r * std::sin(th);
      if (!(t > 0.0))
        throw std::runtime_error("beam_reference_field: receiver point behind the source");
      const TaylorCoeffs tc = taylor_coeffs(t, cfg.Q0);
      const Complex amp = A_init * (tc.A0 + 0.5 * nn * nn * tc.A2);
      const Complex phase =
          t + 0.5 * nn * nn * tc.phi2 + nn * nn * nn * nn * tc.phi4 / 24.0;
      acc += co * amp * std::exp(Complex(0.0, cfg.omega) * phase);
    }
    out.values[i] = scale * acc;
  });
  return out;
}

}  // namespace gbl
