#include "gbl/cc_analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gbl {

TaylorCoeffs taylor_coeffs(double t, double Q0) {
  if (!(Q0 > 0.0)) throw std::invalid_argument("taylor_coeffs requires Q0 > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("taylor_coeffs requires t >= 0");
  const Complex z(Q0, t);  // Q0 + i t
  TaylorCoeffs c;
  c.t = t;
  c.phi2 = Complex(0.0, 1.0) / z;
  c.phi3 = 0.0;
  c.phi4 = -3.0 * t / (z * z * z * z);
  // arg(z) in (0, pi/2], so the principal powers below stay on one branch.
  c.A0 = std::sqrt(Q0 / z);
  c.A1 = 0.0;
  c.A2 = Complex(0.0, 1.5) * t * std::sqrt(Q0) / std::pow(z, 3.5);
  return c;
}

Complex d_moment(int p, double c1) {
  if (p < 0 || p > 8) throw std::invalid_argument("d_moment supports 0 <= p <= 8");
  if (p % 2 == 1) return {0.0, 0.0};
  double n_p = std::sqrt(2.0 * std::numbers::pi);  // N_p = (p-1)!! sqrt(2 pi)
  for (int k = p - 1; k > 0; k -= 2) n_p *= k;
  // 1 - 2 i c1 has positive real part, so the principal power is unambiguous.
  return n_p * std::pow(Complex(1.0, -2.0 * c1), -(p + 1) / 2.0);
}

ErrorConstants error_constants(double Q0, double y_star, double omega, double y0_pp) {
  if (!(Q0 > 0.0)) throw std::invalid_argument("error_constants requires Q0 > 0");
  if (!(1.0 - y_star * y0_pp > 0.0))
    throw std::domain_error("error_constants: caustic before the receiver (1 - y* y0'' <= 0)");

  ErrorConstants ec;
  ec.omega = omega;
  ec.y_star = y_star;
  ec.Q0 = Q0;
  ec.y0_pp = y0_pp;
  ec.sigma = 1;  // q = 0 beams throughout
  ec.q = 0;
  ec.q_star = 2;
  ec.q_a = 0;

  const double m_prime = 1.0 / (1.0 - y_star * y0_pp);
  const Complex z(Q0, y_star);  // Q0 + i y*
  const double sq = std::sqrt(Q0);
  const Complex z2 = z * z;

  // All odd n-derivatives vanish for the orthogonal plane-wave data at the
  // symmetry point, so the odd-order coefficients are identically zero.
  ec.a1 = 0.0;
  ec.b1 = 0.0;
  ec.c2 = 0.0;

  ec.a2 = Complex(0.0, 1.0) *
          (3.0 * sq * y_star - 2.0 * sq * z2 * m_prime * y0_pp) / (4.0 * std::pow(z, 3.5));
  ec.b2 = Complex(0.0, 1.0) * (Q0 * Q0 + y_star * y_star) *
          (-y_star + 4.0 * z2 * m_prime * y0_pp) / (8.0 * Q0 * z2 * z2);
  ec.c1 = (y_star + (Q0 * Q0 + y_star * y_star) * m_prime * y0_pp) / (2.0 * Q0);

  const Complex A00 = sq / std::sqrt(z);
  const double c1r = ec.c1.real();
  ec.e11 = 0.0;  // d_p = 0 for odd p and a1 = 0
  ec.e21 = 0.0;
  ec.e12 = m_prime * ec.a2 * d_moment(2, c1r);
  ec.e22 = m_prime * A00 * ec.b2 * d_moment(4, c1r);
  ec.C_star = std::exp(Complex(0.0, omega * y_star)) * (ec.e12 + ec.e22);

  ec.eta_receiver = std::sqrt((Q0 * Q0 + y_star * y_star) / (omega * Q0));
  ec.go_factor = std::sqrt(std::abs(1.0 - y_star * y0_pp));
  return ec;
}

double relative_error(const ErrorConstants& constants) {
  const double eta3 = constants.eta_receiver * constants.eta_receiver * constants.eta_receiver;
  return std::sqrt(constants.omega) * eta3 * std::abs(constants.C_star) * constants.go_factor;
}

WidthTable width_vs_q0(double y_star, double omega, std::span<const double> q0_grid) {
  if (q0_grid.empty()) throw std::invalid_argument("width_vs_q0 requires a non-empty grid");
  WidthTable table;
  table.q0.assign(q0_grid.begin(), q0_grid.end());
  table.eta.reserve(q0_grid.size());
  double best = 0.0;
  for (std::size_t i = 0; i < table.q0.size(); ++i) {
    const double q0 = table.q0[i];
    if (!(q0 > 0.0)) throw std::invalid_argument("width_vs_q0 requires positive Q0");
    table.eta.push_back(std::sqrt((q0 * q0 + y_star * y_star) / (omega * q0)));
    if (i == 0 || table.eta[i] < best) {
      best = table.eta[i];
      table.argmin_q0 = q0;
    }
  }
  return table;
}

}  // namespace gbl
