#ifndef GBL_BEAM_MODEL_HPP
#define GBL_BEAM_MODEL_HPP

#include <optional>

#include "gbl/medium.hpp"
#include "gbl/ray_engine.hpp"
#include "gbl/types.hpp"

namespace gbl {

// Smooth compactly supported cutoff: value 1 for |r| <= alpha/2, 0 for
// |r| >= alpha, glued with the standard exp(-1/z) smooth step in between.
class Cutoff {
 public:
  explicit Cutoff(double alpha = 1.0);

  double alpha() const { return alpha_; }
  double operator()(double r) const;

 private:
  double alpha_;
};

// Where a central ray meets the receiver line y = y_star (first upward
// crossing). `sample` carries the full ray state interpolated to t_cross;
// X is the crossing abscissa X(s).
struct ReceiverCrossing {
  double s = 0.0;
  double t_cross = 0.0;
  double X = 0.0;
  RaySample sample;
};

// Locates the first upward crossing of y = y_star by bisection on the cubic
// Hermite interpolant of y(t) (tolerance 1e-12 in t), then interpolates the
// whole state to t_cross. Returns nullopt when the trace never crosses
// upward (beam misses the receiver).
std::optional<ReceiverCrossing> find_crossing(const RayTrace& trace,
                                              const Medium& medium, double y_star);

// Beam width eta = 1/sqrt(omega Im phi_xx) at the crossing. Throws when
// Im phi_xx <= 0 (degenerate beam).
double beam_width(double omega, const ReceiverCrossing& crossing, const Medium& medium);

// Single-beam contribution at (x, y_star): cutoff(X - x) * amp * exp(i w phi~)
// with phi~(x) = phase_on_ray + (x - X) p_x + (x - X)^2 phi_xx / 2,
// p_x = cos(theta)/c. `amp` must be the transported amplitude at the crossing.
Complex eval_beam(double x, double y_star, const ReceiverCrossing& crossing,
                  const Medium& medium, double omega, Complex amp, const Cutoff& cutoff);

}  // namespace gbl

#endif
