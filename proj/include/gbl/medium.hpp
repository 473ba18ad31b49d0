#ifndef GBL_MEDIUM_HPP
#define GBL_MEDIUM_HPP

#include <string>

#include "gbl/types.hpp"

namespace gbl {

// Axis-aligned bounding box of the computational domain.
struct DomainBox {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = 0.0;
  double y_max = 4.0;

  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

// Speed of propagation and its first and second spatial derivatives at a point.
struct MediumEval {
  double c;
  double cx, cy;
  double cxx, cxy, cyy;
};

// Smooth speed-of-propagation model c(x,y) with exact analytic derivatives.
//
// Two built-in models:
//   constant   c(x,y) = c0
//   waveguide  c(x,y) = 1 + a sin(kx x) sin(ky y)
// The waveguide defaults (a = 0.2, kx = ky = pi/2) bend rays visibly without
// forming a caustic before y = 2.
class Medium {
 public:
  static Medium constant(double c0 = 1.0);
  static Medium waveguide(double amplitude = 0.2, double kx = 0.0, double ky = 0.0);

  // Throws std::domain_error naming the offending coordinate when (x,y) is
  // outside the domain box.
  MediumEval eval(double x, double y) const;

  const DomainBox& domain() const { return box_; }
  void set_domain(const DomainBox& box) { box_ = box; }

  bool is_constant() const { return kind_ == Kind::Constant; }
  double constant_speed() const;   // throws if not a constant medium
  double min_speed() const;        // lower bound of c over the plane
  const std::string& name() const { return name_; }

  Medium() = default;  // constant unit-speed medium

 private:
  enum class Kind { Constant, Waveguide };

  Kind kind_ = Kind::Constant;
  double c0_ = 1.0;
  double amp_ = 0.2;
  double kx_ = 0.0;
  double ky_ = 0.0;
  DomainBox box_;
  std::string name_ = "constant";
};

}  // namespace gbl

#endif
