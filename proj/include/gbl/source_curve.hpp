#ifndef GBL_SOURCE_CURVE_HPP
#define GBL_SOURCE_CURVE_HPP

#include <string>

#include "gbl/types.hpp"

namespace gbl {

// Source curve x0(s) = (s, y0(s)) given as a graph over the parameter s.
// Beams are shot orthogonally: theta0(s) = pi/2 + atan(y0'(s)).
//
// Built-in shapes: flat line y0 = 0, oblique line y0 = s tan(beta),
// circle y0 = -1 + sqrt(1 - s^2) and parabola y0 = -s^2/2 (the two canonical
// curved sources, both with y0''(0) = -1).
class SourceCurve {
 public:
  static SourceCurve flat();
  static SourceCurve oblique(double beta_rad);
  static SourceCurve circle();
  static SourceCurve parabola();

  double y0(double s) const;
  double dy0(double s) const;
  double ddy0(double s) const;
  Vec2 point(double s) const { return {s, y0(s)}; }
  double theta0(double s) const;  // orthogonal shooting angle

  // Largest |s| admitted by the parameterization (the circle chart degenerates
  // at |s| = 1). Infinity for the line sources.
  double s_limit() const;

  double curvature_at_zero() const { return ddy0(0.0); }  // y0''(0)
  const std::string& name() const { return name_; }

  SourceCurve() = default;  // flat line y0 = 0

 private:
  enum class Kind { Flat, Oblique, Circle, Parabola };

  Kind kind_ = Kind::Flat;
  double tan_beta_ = 0.0;
  std::string name_ = "flat";
};

}  // namespace gbl

#endif
