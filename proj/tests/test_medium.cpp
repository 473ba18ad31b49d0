#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "gbl/medium.hpp"

using gbl::DomainBox;
using gbl::Medium;
using gbl::MediumEval;

TEST_CASE("constant medium returns exact values and zero derivatives") {
  const Medium m = Medium::constant(1.0);
  const MediumEval e = m.eval(0.3, 2.0);
  CHECK(e.c == 1.0);
  CHECK(e.cx == 0.0);
  CHECK(e.cy == 0.0);
  CHECK(e.cxx == 0.0);
  CHECK(e.cxy == 0.0);
  CHECK(e.cyy == 0.0);
}

TEST_CASE("waveguide derivatives match finite differences at random points") {
  Medium m = Medium::waveguide();
  DomainBox box{-3.0, 3.0, -1.0, 5.0};
  m.set_domain(box);

  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> ux(-2.5, 2.5), uy(-0.5, 4.5);

  auto c_at = [&](double x, double y) { return m.eval(x, y).c; };
  const double hg = 1e-4;  // gradient step
  const double hh = 1e-3;  // hessian step

  for (int trial = 0; trial < 1000; ++trial) {
    const double x = ux(rng), y = uy(rng);
    const MediumEval e = m.eval(x, y);
    CHECK(e.c > 0.0);

    const double fd_cx = (c_at(x + hg, y) - c_at(x - hg, y)) / (2.0 * hg);
    const double fd_cy = (c_at(x, y + hg) - c_at(x, y - hg)) / (2.0 * hg);
    const double fd_cxx = (c_at(x + hh, y) - 2.0 * e.c + c_at(x - hh, y)) / (hh * hh);
    const double fd_cyy = (c_at(x, y + hh) - 2.0 * e.c + c_at(x, y - hh)) / (hh * hh);
    const double fd_cxy = (c_at(x + hh, y + hh) - c_at(x + hh, y - hh) -
                           c_at(x - hh, y + hh) + c_at(x - hh, y - hh)) /
                          (4.0 * hh * hh);

    auto close = [](double exact, double fd, double rel_tol) {
      const double err = std::abs(exact - fd);
      if (std::abs(exact) > 1e-3) return err / std::abs(exact) < rel_tol;
      return err < 1e-8;  // near-zero derivative: absolute comparison
    };
    CHECK(close(e.cx, fd_cx, 1e-6));
    CHECK(close(e.cy, fd_cy, 1e-6));
    CHECK(close(e.cxx, fd_cxx, 1e-5));
    CHECK(close(e.cyy, fd_cyy, 1e-5));
    CHECK(close(e.cxy, fd_cxy, 1e-5));
  }
}

TEST_CASE("evaluation outside the domain names the offending coordinate") {
  const Medium m = Medium::constant(1.0);  // default box [-2,2] x [0,4]
  CHECK_THROWS_WITH_AS(m.eval(5.0, 1.0), doctest::Contains("x = 5"), std::domain_error);
  CHECK_THROWS_WITH_AS(m.eval(0.0, -1.0), doctest::Contains("y = -1"), std::domain_error);
}

TEST_CASE("waveguide speed stays positive and bounded on the default box") {
  const Medium m = Medium::waveguide();
  for (double x = -2.0; x <= 2.0; x += 0.25)
    for (double y = 0.0; y <= 4.0; y += 0.25) {
      const double c = m.eval(x, y).c;
      CHECK(c >= 0.8);
      CHECK(c <= 1.2);
    }
  CHECK(m.min_speed() == doctest::Approx(0.8));
}
