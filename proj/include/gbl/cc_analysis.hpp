#ifndef GBL_CC_ANALYSIS_HPP
#define GBL_CC_ANALYSIS_HPP

#include <span>
#include <vector>

#include "gbl/types.hpp"

namespace gbl {

// Ray-centered Taylor coefficients of the phase and amplitude along a
// unit-speed constant-medium beam with P0 = i, Re Q0 > 0, zero initial data
// for all coefficients beyond A0(0) = 1.
struct TaylorCoeffs {
  double t;
  Complex phi2, phi3, phi4;  // d^n/dn^n phi on the ray, n = 2, 3, 4
  Complex A0, A1, A2;        // d^n/dn^n A  on the ray, n = 0, 1, 2
};

// Closed-form solutions of the Taylor-coefficient ODE system:
//   phi2 = i/(Q0 + i t), phi3 = 0, phi4 = -3 t/(Q0 + i t)^4,
//   A0 = (Q0/(Q0 + i t))^{1/2}, A1 = 0, A2 = (3/2) i t sqrt(Q0)/(Q0+i t)^{7/2}.
TaylorCoeffs taylor_coeffs(double t, double Q0);

// Gaussian moment d_p = int z^p exp(i z^2 c1 - z^2/2) dz:
// 0 for odd p, (p-1)!! sqrt(2 pi) (1 - 2 i c1)^{-(p+1)/2} for even p.
// Supported for 0 <= p <= 8.
Complex d_moment(int p, double c1);

// Leading Taylor-error constants at the observation point (0, y_star) for the
// orthogonal plane-wave superposition over a source with curvature
// y0''(0) = y0_pp (0: line; -1: circle/parabola). All odd-derivative
// coefficients vanish by symmetry, so C* = e^{i w y*} (e12 + e22) with
// e12 + e22 = m'(0) a2 d2(c1) + m'(0) A(0,0) b2 d4(c1).
struct ErrorConstants {
  Complex a1, a2, b1, b2, c1, c2;
  int sigma = 1;                 // q = 0 switch in the b-terms
  int q = 0, q_star = 2, q_a = 0;
  Complex e11, e12, e21, e22;
  Complex C_star;

  // evaluation context needed by relative_error
  double omega = 0.0, y_star = 0.0, Q0 = 0.0, y0_pp = 0.0;
  double eta_receiver = 0.0;     // eta(0) = ((Q0^2 + y*^2)/(omega Q0))^{1/2}
  double go_factor = 0.0;        // |1 - y* y0''(0)|^{1/2}
};

ErrorConstants error_constants(double Q0, double y_star, double omega, double y0_pp);

// Leading relative-error term omega^{1/2} eta(0)^3 |C*(0)| |1 - y* y0''|^{1/2}.
double relative_error(const ErrorConstants& constants);

// Beam width at the receiver as a function of Q0, plus the grid argmin.
struct WidthTable {
  std::vector<double> q0;
  std::vector<double> eta;
  double argmin_q0 = 0.0;
};

WidthTable width_vs_q0(double y_star, double omega, std::span<const double> q0_grid);

}  // namespace gbl

#endif
