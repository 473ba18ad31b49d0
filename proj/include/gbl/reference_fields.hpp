#ifndef GBL_REFERENCE_FIELDS_HPP
#define GBL_REFERENCE_FIELDS_HPP

#include <span>
#include <vector>

#include "gbl/medium.hpp"
#include "gbl/source_curve.hpp"
#include "gbl/superposition.hpp"
#include "gbl/types.hpp"

namespace gbl {

// First-order geometrical optics field on the receiver line.
struct GOSolution {
  std::vector<double> xs;
  std::vector<double> phase;        // travel time at the crossing
  std::vector<Complex> amplitude;   // real-valued for a caustic-free fan

  ComplexFieldSamples field(double omega) const;
};

// Traces a fan of rays with real dynamic data matched to the source geometry
// (Q0 = sqrt(1 + y0'^2), P0 = -y0''/(1 + y0'^2); the flat source gives the
// classical (1, 0) pair), then resamples phase and amplitude onto receiver_xs
// by monotone cubic interpolation. Throws on a non-monotone fan (caustic).
GOSolution go_field(const Medium& medium, const SourceCurve& source, double y_star,
                    double omega, double fan_spacing, double s_min, double s_max,
                    std::span<const double> receiver_xs, double dt = 1e-3,
                    int workers = 1);

// Closed-form plane wave u(x) = exp(i omega y_star) for the constant medium
// with a flat source.
ComplexFieldSamples exact_field_constant(double omega, double y_star,
                                         std::span<const double> xs);

// Superposition of the *unexpanded* beams in a constant unit-speed medium:
// each beam evaluated in exact ray-centered coordinates (t, n) with phase
// t + n^2 phi2(t)/2 + n^4 phi4(t)/24 and amplitude A0(t) + n^2 A2(t)/2 from
// the ray-centered Taylor-coefficient closed forms. This is the reference
// against which the second-order beam sum's Taylor expansion error is
// measured; the cutoff matches field_discrete term by term so cutoff effects
// cancel in the difference. Requires constant c = 1 and P0 = i.
ComplexFieldSamples beam_reference_field(const BeamBundle& bundle);

}  // namespace gbl

#endif
