#include "gbl/beam_model.hpp"

#include <cmath>
#include <stdexcept>

namespace gbl {

Cutoff::Cutoff(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("cutoff radius alpha must be positive");
}

namespace {

double glue(double z) {  // exp(-1/z) for z > 0, 0 otherwise
  return z > 0.0 ? std::exp(-1.0 / z) : 0.0;
}

}  // namespace

double Cutoff::operator()(double r) const {
  const double a = std::abs(r);
  if (a <= 0.5 * alpha_) return 1.0;
  if (a >= alpha_) return 0.0;
  // Smooth step from 1 at alpha/2 down to 0 at alpha.
  const double z = (alpha_ - a) / (0.5 * alpha_);
  const double f = glue(z);
  return f / (f + glue(1.0 - z));
}

namespace {

// Cubic Hermite value on [0, dt] from endpoint values and derivatives.
template <typename T>
T hermite(double u, double dt, T f0, T d0, T f1, T d1) {
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
  const double h10 = u3 - 2.0 * u2 + u;
  const double h01 = -2.0 * u3 + 3.0 * u2;
  const double h11 = u3 - u2;
  return h00 * f0 + (h10 * dt) * d0 + h01 * f1 + (h11 * dt) * d1;
}

struct Derivs {
  double dx, dy, dtheta;
  Complex dQ, dP;
};

Derivs sample_rhs(const Medium& med, const RaySample& s) {
  const MediumEval e = med.eval(s.x, s.y);
  const double sn = std::sin(s.theta), cs = std::cos(s.theta);
  Derivs d;
  d.dx = e.c * cs;
  d.dy = e.c * sn;
  d.dtheta = e.cx * sn - e.cy * cs;
  d.dQ = e.c * e.c * s.P;
  d.dP = -((e.cxx * sn * sn - 2.0 * e.cxy * sn * cs + e.cyy * cs * cs) / e.c) * s.Q;
  return d;
}

}  // namespace

std::optional<ReceiverCrossing> find_crossing(const RayTrace& trace,
                                              const Medium& medium, double y_star) {
  const auto& smp = trace.samples;
  for (std::size_t i = 0; i + 1 < smp.size(); ++i) {
    if (!(smp[i].y < y_star && smp[i + 1].y >= y_star)) continue;

    const Derivs d0 = sample_rhs(medium, smp[i]);
    const Derivs d1 = sample_rhs(medium, smp[i + 1]);
    if (!(d0.dy > 0.0)) continue;  // only upward crossings

    const double dt = trace.dt;
    auto y_of = [&](double u) {
      return hermite(u, dt, smp[i].y, d0.dy, smp[i + 1].y, d1.dy);
    };
    // Bisection in t on the Hermite interpolant, tolerance 1e-12.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 64 && (hi - lo) * dt > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      (y_of(mid) < y_star ? lo : hi) = mid;
    }
    const double u = 0.5 * (lo + hi);

    ReceiverCrossing cr;
    cr.s = trace.s_param;
    cr.t_cross = smp[i].t + u * dt;
    cr.sample.t = cr.t_cross;
    cr.sample.x = hermite(u, dt, smp[i].x, d0.dx, smp[i + 1].x, d1.dx);
    cr.sample.y = y_of(u);
    cr.sample.theta = hermite(u, dt, smp[i].theta, d0.dtheta, smp[i + 1].theta, d1.dtheta);
    if (trace.has_dynamic) {
      cr.sample.Q = hermite(u, dt, smp[i].Q, d0.dQ, smp[i + 1].Q, d1.dQ);
      cr.sample.P = hermite(u, dt, smp[i].P, d0.dP, smp[i + 1].P, d1.dP);
    }
    cr.sample.phase_on_ray = trace.phase0 + cr.t_cross;
    cr.X = cr.sample.x;
    return cr;
  }
  return std::nullopt;
}

double beam_width(double omega, const ReceiverCrossing& crossing, const Medium& medium) {
  const Complex phi_xx = phase_hessian(crossing.sample, medium).xx;
  if (!(phi_xx.imag() > 0.0))
    throw std::runtime_error("beam_width: Im(phi_xx) <= 0 at the crossing (degenerate beam)");
  return 1.0 / std::sqrt(omega * phi_xx.imag());
}

Complex eval_beam(double x, double y_star, const ReceiverCrossing& crossing,
                  const Medium& medium, double omega, Complex amp, const Cutoff& cutoff) {
  const double co = cutoff(crossing.X - x);
  if (co == 0.0) return {0.0, 0.0};
  (void)y_star;  // carried by the crossing; kept in the signature for clarity
  const RaySample& s = crossing.sample;
  const double c = medium.eval(s.x, s.y).c;
  const double px = std::cos(s.theta) / c;  // x-component of grad phi on the ray
  const Complex phi_xx = phase_hessian(s, medium).xx;
  const double r = x - crossing.X;
  const Complex phase = s.phase_on_ray + r * px + 0.5 * r * r * phi_xx;
  return co * amp * std::exp(Complex(0.0, omega) * phase);
}

}  // namespace gbl
