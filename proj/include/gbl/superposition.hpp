#ifndef GBL_SUPERPOSITION_HPP
#define GBL_SUPERPOSITION_HPP

#include <optional>
#include <vector>

#include "gbl/beam_model.hpp"
#include "gbl/medium.hpp"
#include "gbl/ray_engine.hpp"
#include "gbl/source_curve.hpp"
#include "gbl/types.hpp"

namespace gbl {

struct ComplexFieldSamples {
  std::vector<double> xs;
  std::vector<Complex> values;
};

// Parameters of one plane-wave beam superposition.
struct SuperposConfig {
  double omega = 100.0;
  double Q0 = 1.0;
  Complex P0{0.0, 1.0};
  double h = 0.0;              // beam spacing in s; must satisfy h < eta0
  double s_min = 0.0, s_max = 0.0;
  double y_star = 2.0;
  std::vector<double> receiver_xs;
  double alpha = 1.0;          // cutoff radius
  double dt = 1e-3;
  double trace_T = 0.0;        // 0 -> choose automatically from geometry
  int workers = 1;
  bool keep_traces = true;
  double initial_amplitude_override = 0.0;  // 0 -> Hill value 1/(sqrt(pi w) eta0)

  double eta0() const;                 // (2 Q0 / omega)^{1/2}
  double initial_amplitude() const;    // A(x,0,s) = 1/(sqrt(pi omega) eta0)
  void validate() const;               // throws on h >= eta0 etc.
};

struct BundleBeam {
  double s = 0.0;
  RayTrace trace;                      // samples emptied when keep_traces is off
  std::optional<ReceiverCrossing> crossing;
  Complex amp_at_crossing{0.0, 0.0};   // transported initial amplitude
};

// A family of beams sharing (Q0, P0, omega, h), shot orthogonally from the
// source curve. Crossings are strictly monotone in s (no caustic on the
// receiver); beams that miss the receiver are excluded and counted.
struct BeamBundle {
  SuperposConfig config;
  Medium medium;
  SourceCurve source;
  std::vector<BundleBeam> beams;
  int miss_count = 0;
};

BeamBundle plane_wave_bundle(const Medium& medium, const SuperposConfig& config,
                             const SourceCurve& source);

// u(x) = omega^{1/2} h  sum_j eval_beam(x, ..., s_j) on config.receiver_xs.
// Summation order is the fixed beam order, so results are bit-reproducible
// for any worker count.
ComplexFieldSamples field_discrete(const BeamBundle& bundle);

// Trapezoidal refinement of the superposition integral: the same sum with
// spacing h/refine and freshly traced beams. refine = 1 reproduces
// field_discrete exactly.
ComplexFieldSamples field_quadrature(const BeamBundle& bundle, int refine);

}  // namespace gbl

#endif
