#ifndef GBL_RAY_ENGINE_HPP
#define GBL_RAY_ENGINE_HPP

#include <cstddef>
#include <vector>

#include "gbl/medium.hpp"
#include "gbl/types.hpp"

namespace gbl {

// State of a ray at one time sample. Q and P are the complex dynamic ray
// tracing scalars; phase_on_ray = phi(x0) + t is real on the central ray.
struct RaySample {
  double t;
  double x, y;
  double theta;
  Complex Q{0.0, 0.0};
  Complex P{0.0, 0.0};
  double phase_on_ray;
};

// Uniformly sampled central ray plus (optionally) the dynamic state.
struct RayTrace {
  std::vector<RaySample> samples;
  double dt = 0.0;
  double s_param = 0.0;      // position on the source curve
  double x0 = 0.0, y0 = 0.0; // launch point
  double theta0 = 0.0;
  double phase0 = 0.0;
  Complex Q0{1.0, 0.0};
  Complex P0{0.0, 1.0};
  bool has_dynamic = false;
  bool exited = false;       // ray left the medium domain before reaching T
  double exit_time = 0.0;
};

// Integrates dx/dt = c cos(theta), dy/dt = c sin(theta),
// dtheta/dt = c_x sin(theta) - c_y cos(theta) with classical fixed-step RK4.
// A ray leaving the domain yields a truncated trace flagged with exit_time.
RayTrace trace_central(const Medium& medium, double x0, double y0, double theta0,
                       double T, double dt, double phase0 = 0.0);

// Fills Q, P along the ray by re-running the coupled central+dynamic RK4 pass
// (dQ/dt = c^2 P, dP/dt = -(c_xx sin^2 - 2 c_xy sin cos + c_yy cos^2)/c Q)
// from the trace's stored initial data. Gaussian-beam data must satisfy
// Q0 != 0 and Im(P0/Q0) > 0, and loss of Im(P/Q) > 0 along the ray throws;
// pass require_gaussian = false for real (geometrical-optics) data, where
// only Q != 0 is enforced.
void trace_dynamic(const Medium& medium, RayTrace& trace, Complex Q0, Complex P0,
                   bool require_gaussian = true);

// Convenience: central + dynamic in one call.
RayTrace trace_beam(const Medium& medium, double x0, double y0, double theta0,
                    Complex Q0, Complex P0, double T, double dt, double phase0 = 0.0,
                    bool require_gaussian = true);

// Complex symmetric 2x2 phase Hessian D^2 phi = H N H^T.
struct PhaseHessian {
  Complex xx, xy, yy;
};

PhaseHessian phase_hessian(const RaySample& sample, const Medium& medium);

// Amplitude transport A(t) = A_start (c(t) Q_start / (c_start Q(t)))^{1/2}
// with the square-root branch tracked continuously in t from the trace start.
// `at` may lie between stored samples (e.g. an interpolated receiver
// crossing). Throws when the branch argument jumps by more than pi/2 between
// adjacent samples (step size too large).
Complex amplitude_on_ray(const RayTrace& trace, const Medium& medium,
                         const RaySample& at, Complex A_start);

// Same, at a stored sample index.
Complex amplitude_on_ray(const RayTrace& trace, const Medium& medium,
                         std::size_t sample_index, Complex A_start);

}  // namespace gbl

#endif
