#include "gbl/medium.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gbl {

Medium Medium::constant(double c0) {
  if (!(c0 > 0.0)) throw std::invalid_argument("constant medium requires c0 > 0");
  Medium m;
  m.kind_ = Kind::Constant;
  m.c0_ = c0;
  m.name_ = "constant";
  return m;
}

Medium Medium::waveguide(double amplitude, double kx, double ky) {
  if (!(std::abs(amplitude) < 1.0))
    throw std::invalid_argument("waveguide amplitude must satisfy |a| < 1 to keep c > 0");
  Medium m;
  m.kind_ = Kind::Waveguide;
  m.amp_ = amplitude;
  m.kx_ = kx > 0.0 ? kx : std::numbers::pi / 2.0;
  m.ky_ = ky > 0.0 ? ky : std::numbers::pi / 2.0;
  m.name_ = "waveguide";
  return m;
}

MediumEval Medium::eval(double x, double y) const {
  if (!box_.contains(x, y)) {
    std::ostringstream msg;
    msg << "point outside medium domain: ";
    if (x < box_.x_min || x > box_.x_max)
      msg << "x = " << x << " not in [" << box_.x_min << ", " << box_.x_max << "]";
    else
      msg << "y = " << y << " not in [" << box_.y_min << ", " << box_.y_max << "]";
    throw std::domain_error(msg.str());
  }
  if (kind_ == Kind::Constant) return {c0_, 0.0, 0.0, 0.0, 0.0, 0.0};

  const double sx = std::sin(kx_ * x), cx = std::cos(kx_ * x);
  const double sy = std::sin(ky_ * y), cy = std::cos(ky_ * y);
  MediumEval e;
  e.c = 1.0 + amp_ * sx * sy;
  e.cx = amp_ * kx_ * cx * sy;
  e.cy = amp_ * ky_ * sx * cy;
  e.cxx = -amp_ * kx_ * kx_ * sx * sy;
  e.cxy = amp_ * kx_ * ky_ * cx * cy;
  e.cyy = -amp_ * ky_ * ky_ * sx * sy;
  return e;
}

double Medium::constant_speed() const {
  if (kind_ != Kind::Constant)
    throw std::logic_error("constant_speed() called on a non-constant medium");
  return c0_;
}

double Medium::min_speed() const {
  return kind_ == Kind::Constant ? c0_ : 1.0 - std::abs(amp_);
}

}  // namespace gbl
