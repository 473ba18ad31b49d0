#include "gbl/source_curve.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gbl {

SourceCurve SourceCurve::flat() {
  SourceCurve c;
  c.kind_ = Kind::Flat;
  c.name_ = "flat";
  return c;
}

SourceCurve SourceCurve::oblique(double beta_rad) {
  if (std::abs(beta_rad) >= std::numbers::pi / 2.0)
    throw std::invalid_argument("oblique source angle must satisfy |beta| < pi/2");
  SourceCurve c;
  c.kind_ = Kind::Oblique;
  c.tan_beta_ = std::tan(beta_rad);
  c.name_ = "oblique";
  return c;
}

SourceCurve SourceCurve::circle() {
  SourceCurve c;
  c.kind_ = Kind::Circle;
  c.name_ = "circle";
  return c;
}

SourceCurve SourceCurve::parabola() {
  SourceCurve c;
  c.kind_ = Kind::Parabola;
  c.name_ = "parabola";
  return c;
}

static void check_circle_param(double s) {
  if (std::abs(s) >= 1.0)
    throw std::domain_error("circle source parameter |s| must be < 1");
}

double SourceCurve::y0(double s) const {
  switch (kind_) {
    case Kind::Flat: return 0.0;
    case Kind::Oblique: return tan_beta_ * s;
    case Kind::Circle:
      check_circle_param(s);
      return -1.0 + std::sqrt(1.0 - s * s);
    case Kind::Parabola: return -0.5 * s * s;
  }
  return 0.0;
}

double SourceCurve::dy0(double s) const {
  switch (kind_) {
    case Kind::Flat: return 0.0;
    case Kind::Oblique: return tan_beta_;
    case Kind::Circle:
      check_circle_param(s);
      return -s / std::sqrt(1.0 - s * s);
    case Kind::Parabola: return -s;
  }
  return 0.0;
}

double SourceCurve::ddy0(double s) const {
  switch (kind_) {
    case Kind::Flat:
    case Kind::Oblique: return 0.0;
    case Kind::Circle: {
      check_circle_param(s);
      const double u = 1.0 - s * s;
      return -1.0 / (u * std::sqrt(u));
    }
    case Kind::Parabola: return -1.0;
  }
  return 0.0;
}

double SourceCurve::theta0(double s) const {
  return std::numbers::pi / 2.0 + std::atan(dy0(s));
}

double SourceCurve::s_limit() const {
  return kind_ == Kind::Circle ? 0.98 : std::numeric_limits<double>::infinity();
}

}  // namespace gbl
