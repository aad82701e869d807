#include <doctest.h>

#include <cmath>

#include "pdproj/quadrature.hpp"
#include "test_support.hpp"

using namespace pdproj;
using pdproj_test::raises;

TEST_CASE("polynomials integrate to machine precision") {
  auto sq = [](double x) { return x * x; };
  CHECK(integrate(sq, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate(sq, 1.0, 0.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate(sq, 2.0, 2.0) == 0.0);
}

TEST_CASE("smooth transcendental integrands meet the requested tolerance") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("subdivision exhaustion is reported, not silently accepted") {
  QuadratureOptions opt;
  opt.rel_tol = 1e-15;
  opt.abs_tol = 1e-300;
  opt.max_depth = 2;
  CHECK(raises(errc::no_convergence, [&] {
    integrate([](double x) { return std::sin(x * x) + 1.0 / (x + 2.0); }, 0.0,
              3.0, opt);
  }));
}

TEST_CASE("path length with an analytic derivative") {
  Path3 helix;
  helix.point = [](double t) {
    return Point3{std::cos(t), std::sin(t), t};
  };
  helix.derivative = [](double t) {
    return Point3{-std::sin(t), std::cos(t), 1.0};
  };
  CHECK(path_length(helix, 0.0, 2.0 * M_PI) ==
        doctest::Approx(2.0 * M_PI * std::sqrt(2.0)).epsilon(1e-12));
  // orientation-independent
  CHECK(path_length(helix, 2.0 * M_PI, 0.0) ==
        doctest::Approx(2.0 * M_PI * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("arc length from points alone via numerical differentiation") {
  auto circle = [](double t) {
    return Point3{2.0 * std::cos(t), 2.0 * std::sin(t), 0.0};
  };
  CHECK(arc_length_quadrature(circle, 0.0, M_PI_2) ==
        doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("numeric derivative matches an analytic one") {
  auto curve = [](double t) {
    return Point3{t * t, std::sin(t), std::exp(0.3 * t)};
  };
  for (double t : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
    Point3 d = numeric_derivative(curve, t);
    CHECK(d.u == doctest::Approx(2.0 * t).epsilon(1e-8).scale(1.0));
    CHECK(d.v == doctest::Approx(std::cos(t)).epsilon(1e-8));
    CHECK(d.w == doctest::Approx(0.3 * std::exp(0.3 * t)).epsilon(1e-8));
  }
}
