#include "gbl/ray_engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gbl {

namespace {

struct CentralState {
  double x, y, theta;
};

struct FullState {
  double x, y, theta;
  Complex Q, P;
};

CentralState rhs(const Medium& med, const CentralState& s) {
  const MediumEval e = med.eval(s.x, s.y);
  const double sn = std::sin(s.theta), cs = std::cos(s.theta);
  return {e.c * cs, e.c * sn, e.cx * sn - e.cy * cs};
}

FullState rhs(const Medium& med, const FullState& s) {
  const MediumEval e = med.eval(s.x, s.y);
  const double sn = std::sin(s.theta), cs = std::cos(s.theta);
  FullState d;
  d.x = e.c * cs;
  d.y = e.c * sn;
  d.theta = e.cx * sn - e.cy * cs;
  d.Q = e.c * e.c * s.P;
  d.P = -((e.cxx * sn * sn - 2.0 * e.cxy * sn * cs + e.cyy * cs * cs) / e.c) * s.Q;
  return d;
}

CentralState axpy(const CentralState& a, double k, const CentralState& b) {
  return {a.x + k * b.x, a.y + k * b.y, a.theta + k * b.theta};
}

FullState axpy(const FullState& a, double k, const FullState& b) {
  return {a.x + k * b.x, a.y + k * b.y, a.theta + k * b.theta,
          a.Q + k * b.Q, a.P + k * b.P};
}

CentralState combine(const CentralState& s, double dt, const CentralState& k1,
                     const CentralState& k2, const CentralState& k3,
                     const CentralState& k4) {
  const double w = dt / 6.0;
  return {s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          s.theta + w * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta)};
}

FullState combine(const FullState& s, double dt, const FullState& k1,
                  const FullState& k2, const FullState& k3, const FullState& k4) {
  const double w = dt / 6.0;
  return {s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
          s.theta + w * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
          s.Q + w * (k1.Q + 2.0 * k2.Q + 2.0 * k3.Q + k4.Q),
          s.P + w * (k1.P + 2.0 * k2.P + 2.0 * k3.P + k4.P)};
}

bool finite(const CentralState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.theta);
}

bool finite(const FullState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.theta) &&
         std::isfinite(s.Q.real()) && std::isfinite(s.Q.imag()) &&
         std::isfinite(s.P.real()) && std::isfinite(s.P.imag());
}

// One RK4 step; returns false (leaving `s` untouched) when a stage leaves the
// medium domain.
template <typename State>
bool rk4_step(const Medium& med, State& s, double dt) {
  try {
    const State k1 = rhs(med, s);
    const State k2 = rhs(med, axpy(s, dt / 2.0, k1));
    const State k3 = rhs(med, axpy(s, dt / 2.0, k2));
    const State k4 = rhs(med, axpy(s, dt, k3));
    const State next = combine(s, dt, k1, k2, k3, k4);
    if (!finite(next)) throw std::runtime_error("ray integration produced NaN/inf");
    s = next;
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

}  // namespace

RayTrace trace_central(const Medium& medium, double x0, double y0, double theta0,
                       double T, double dt, double phase0) {
  if (!(dt > 0.0)) throw std::invalid_argument("trace_central requires dt > 0");
  if (!(T >= dt)) throw std::invalid_argument("trace_central requires T >= dt");

  RayTrace tr;
  tr.dt = dt;
  tr.x0 = x0;
  tr.y0 = y0;
  tr.theta0 = theta0;
  tr.phase0 = phase0;

  const long n_steps = std::lround(T / dt);  // final time within dt/2 of T
  tr.samples.reserve(static_cast<std::size_t>(n_steps) + 1);

  CentralState s{x0, y0, theta0};
  medium.eval(x0, y0);  // launch point must be valid
  tr.samples.push_back({0.0, s.x, s.y, s.theta, {}, {}, phase0});
  for (long k = 0; k < n_steps; ++k) {
    if (!rk4_step(medium, s, dt)) {
      tr.exited = true;
      tr.exit_time = static_cast<double>(k) * dt;
      return tr;
    }
    const double t = static_cast<double>(k + 1) * dt;
    tr.samples.push_back({t, s.x, s.y, s.theta, {}, {}, phase0 + t});
  }
  return tr;
}

void trace_dynamic(const Medium& medium, RayTrace& trace, Complex Q0, Complex P0,
                   bool require_gaussian) {
  if (trace.samples.empty())
    throw std::invalid_argument("trace_dynamic requires a traced central ray");
  if (Q0 == Complex(0.0, 0.0))
    throw std::invalid_argument("trace_dynamic requires Q0 != 0");
  if (require_gaussian && !((P0 / Q0).imag() > 0.0))
    throw std::invalid_argument("trace_dynamic requires Im(P0/Q0) > 0 for beam data");

  // Re-run the coupled pass from the stored initial data: the central-ray
  // components repeat the trace_central arithmetic exactly, and theta feeds
  // the dynamic right-hand side without interpolation.
  trace.Q0 = Q0;
  trace.P0 = P0;
  FullState s{trace.x0, trace.y0, trace.theta0, Q0, P0};
  const std::size_t n = trace.samples.size();
  trace.samples[0].Q = Q0;
  trace.samples[0].P = P0;
  for (std::size_t k = 1; k < n; ++k) {
    if (!rk4_step(medium, s, trace.dt))
      throw std::runtime_error("trace_dynamic: domain exit disagrees with the central trace");
    if (require_gaussian && !((s.P / s.Q).imag() > 0.0))
      throw std::runtime_error(
          "trace_dynamic: Im(P/Q) <= 0 along the ray (reduce dt or check the medium)");
    if (s.Q == Complex(0.0, 0.0))
      throw std::runtime_error("trace_dynamic: Q vanished along the ray (caustic)");
    trace.samples[k].x = s.x;
    trace.samples[k].y = s.y;
    trace.samples[k].theta = s.theta;
    trace.samples[k].Q = s.Q;
    trace.samples[k].P = s.P;
  }
  trace.has_dynamic = true;
}

RayTrace trace_beam(const Medium& medium, double x0, double y0, double theta0,
                    Complex Q0, Complex P0, double T, double dt, double phase0,
                    bool require_gaussian) {
  RayTrace tr = trace_central(medium, x0, y0, theta0, T, dt, phase0);
  trace_dynamic(medium, tr, Q0, P0, require_gaussian);
  return tr;
}

PhaseHessian phase_hessian(const RaySample& sample, const Medium& medium) {
  if (sample.Q == Complex(0.0, 0.0))
    throw std::runtime_error("phase_hessian: degenerate beam (Q = 0)");
  const MediumEval e = medium.eval(sample.x, sample.y);
  const double sn = std::sin(sample.theta), cs = std::cos(sample.theta);
  const Complex pq = sample.P / sample.Q;
  const double c2inv = 1.0 / (e.c * e.c);
  const double c1 = sn * e.cx - cs * e.cy;   // (c1, c2)^T = H^T grad c
  const double c2 = cs * e.cx + sn * e.cy;
  // D^2 phi = H N H^T with N = [[P/Q, -c1/c^2], [-c1/c^2, -c2/c^2]].
  PhaseHessian h;
  h.xx = sn * sn * pq - 2.0 * sn * cs * c1 * c2inv - cs * cs * c2 * c2inv;
  h.xy = -sn * cs * pq + (cs * cs - sn * sn) * c1 * c2inv - sn * cs * c2 * c2inv;
  h.yy = cs * cs * pq + 2.0 * sn * cs * c1 * c2inv - sn * sn * c2 * c2inv;
  return h;
}

namespace {

Complex branch_ratio(const Medium& med, const RayTrace& tr, const RaySample& s) {
  const double c = med.eval(s.x, s.y).c;
  const double c_start = med.eval(tr.x0, tr.y0).c;
  return c * tr.Q0 / (c_start * s.Q);
}

// Continuously tracked argument of w = c Q0 / (c_start Q) from the trace
// start up to sample `upto`.
double unwrap_to(const RayTrace& tr, const Medium& med, std::size_t upto) {
  double arg = std::arg(branch_ratio(med, tr, tr.samples[0]));
  Complex prev = branch_ratio(med, tr, tr.samples[0]);
  for (std::size_t k = 1; k <= upto; ++k) {
    const Complex cur = branch_ratio(med, tr, tr.samples[k]);
    const double jump = std::arg(cur / prev);
    if (std::abs(jump) > std::numbers::pi / 2.0)
      throw std::runtime_error(
          "amplitude_on_ray: branch argument jump exceeds pi/2 (step size too large)");
    arg += jump;
    prev = cur;
  }
  return arg;
}

}  // namespace

Complex amplitude_on_ray(const RayTrace& trace, const Medium& medium,
                         std::size_t sample_index, Complex A_start) {
  if (!trace.has_dynamic)
    throw std::invalid_argument("amplitude_on_ray requires dynamic data on the trace");
  if (sample_index >= trace.samples.size())
    throw std::out_of_range("amplitude_on_ray: sample index out of range");
  const Complex w = branch_ratio(medium, trace, trace.samples[sample_index]);
  const double arg = unwrap_to(trace, medium, sample_index);
  return A_start * std::sqrt(std::abs(w)) * std::polar(1.0, 0.5 * arg);
}

Complex amplitude_on_ray(const RayTrace& trace, const Medium& medium,
                         const RaySample& at, Complex A_start) {
  if (!trace.has_dynamic)
    throw std::invalid_argument("amplitude_on_ray requires dynamic data on the trace");
  // Unwrap through the last stored sample at or before at.t, then take the
  // final step to the queried (interpolated) state.
  std::size_t k = 0;
  while (k + 1 < trace.samples.size() && trace.samples[k + 1].t <= at.t) ++k;
  double arg = unwrap_to(trace, medium, k);
  const Complex w_prev = branch_ratio(medium, trace, trace.samples[k]);

  const Complex w = branch_ratio(medium, trace, at);
  const double jump = std::arg(w / w_prev);
  if (std::abs(jump) > std::numbers::pi / 2.0)
    throw std::runtime_error(
        "amplitude_on_ray: branch argument jump exceeds pi/2 (step size too large)");
  arg += jump;
  return A_start * std::sqrt(std::abs(w)) * std::polar(1.0, 0.5 * arg);
}

}  // namespace gbl
