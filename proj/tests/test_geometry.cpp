#include <doctest.h>

#include <cmath>
#include <random>

#include "pdproj/geometry.hpp"
#include "pdproj/numeric.hpp"
#include "test_support.hpp"

using namespace pdproj;
using pdproj_test::raises;

TEST_CASE("polar_angle covers all quadrants with range (-pi, pi]") {
  CHECK(polar_angle(1.0, 0.0) == doctest::Approx(0.0));
  CHECK(polar_angle(0.0, 1.0) == doctest::Approx(M_PI_2));
  CHECK(polar_angle(0.0, -1.0) == doctest::Approx(-M_PI_2));
  CHECK(polar_angle(-1.0, 1e-300) == doctest::Approx(M_PI));
  CHECK(polar_angle(-1.0, 0.0) == M_PI);  // closed at +pi, open at -pi
  // a representable step below the branch cut stays negative ...
  CHECK(polar_angle(-1.0, -1e-8) == doctest::Approx(-M_PI + 1e-8).epsilon(1e-12));
  // ... but an angle that rounds to exactly -pi lands on the closed end
  CHECK(polar_angle(-1.0, -1e-300) == M_PI);
  CHECK(polar_angle(Point2{3.0, 3.0}) == doctest::Approx(M_PI_4));
  CHECK(polar_angle(Point3{3.0, 3.0, -7.0}) == doctest::Approx(M_PI_4));
}

TEST_CASE("polar_angle is undefined at the origin") {
  CHECK(raises(errc::degenerate_origin, [] { polar_angle(0.0, 0.0); }));
}

TEST_CASE("rotate_about_w maps the given direction to the +u axis") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    double phi = uniform_in(rng, -M_PI, M_PI);
    double rad = uniform_in(rng, 0.1, 5.0);
    double w = uniform_in(rng, -3.0, 3.0);
    Point3 p{rad * std::cos(phi), rad * std::sin(phi), w};
    Point3 q = rotate_about_w(p, phi);
    CHECK(q.u == doctest::Approx(rad).epsilon(1e-12));
    CHECK(q.v == doctest::Approx(0.0).scale(rad).epsilon(1e-12));
    CHECK(q.w == w);
    // norm preserved
    CHECK(q.norm() == doctest::Approx(p.norm()).epsilon(1e-12));
  }
}

TEST_CASE("normalized returns a unit vector") {
  Point3 n = normalized({3.0, 0.0, 4.0});
  CHECK(n.u == doctest::Approx(0.6));
  CHECK(n.w == doctest::Approx(0.8));
  CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("focal plane constructor normalizes its normal") {
  FocalPlane p(0.0, 0.0, 5.0);
  CHECK(p.n == doctest::Approx(1.0));
  FocalPlane q(3.0, 4.0, 0.0);
  CHECK(q.l == doctest::Approx(0.6));
  CHECK(q.m == doctest::Approx(0.8));
  CHECK(q.n == 0.0);
}

TEST_CASE("model rejects invalid focal lengths and tolerances") {
  CHECK(raises(errc::invalid_argument, [] { ParaboloidModel m(0.0); }));
  CHECK(raises(errc::invalid_argument, [] { ParaboloidModel m(-2.0); }));
  CHECK(raises(errc::invalid_argument, [] { ParaboloidModel m(1.0, 0.0); }));
  CHECK(raises(errc::invalid_argument, [] { ParaboloidModel m(1.0, 1e-3); }));
  ParaboloidModel m(2.0);
  CHECK(m.tol_abs() == doctest::Approx(2e-12));  // defaults to 1e-12 * f
}

TEST_CASE("surface membership accepts the vertex and the focal circle") {
  ParaboloidModel m(1.5);
  CHECK(m.on_surface({0.0, 0.0, -1.5}));               // vertex (0, 0, -f)
  CHECK(m.on_surface({3.0, 0.0, 0.0}));                // focal circle r = 2f
  CHECK(m.on_surface({0.0, -3.0, 0.0}));
  CHECK_FALSE(m.on_surface({3.0, 0.0, 0.1}));
  CHECK(m.surface_w(3.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("surface height and residual agree") {
  ParaboloidModel m(0.7);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    double u = uniform_in(rng, -7.0, 7.0);
    double v = uniform_in(rng, -7.0, 7.0);
    Point3 p{u, v, m.surface_w(u, v)};
    CHECK(m.on_surface(p));
    CHECK(std::fabs(m.surface_residual(p)) <= 1e-12 * (u * u + v * v + 1.0));
  }
}

TEST_CASE("plane through the focus and two points") {
  ParaboloidModel m(1.0);
  FocalPlane p = m.plane_through_focus({1.0, 0.0, 1.0}, {0.0, 1.0, 1.0});
  double s = 1.0 / std::sqrt(3.0);
  CHECK(p.l == doctest::Approx(-s).epsilon(1e-15));
  CHECK(p.m == doctest::Approx(-s).epsilon(1e-15));
  CHECK(p.n == doctest::Approx(s).epsilon(1e-15));
}

TEST_CASE("plane orientation is canonical: n >= 0, then m >= 0, then l > 0") {
  ParaboloidModel m(1.0);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    Point3 a{uniform_in(rng, -4, 4), uniform_in(rng, -4, 4),
             uniform_in(rng, -4, 4)};
    Point3 b{uniform_in(rng, -4, 4), uniform_in(rng, -4, 4),
             uniform_in(rng, -4, 4)};
    if (cross(a, b).norm() < 1e-3) continue;
    FocalPlane p = m.plane_through_focus(a, b);
    FocalPlane q = m.plane_through_focus(b, a);  // order-independent
    CHECK(p.l == doctest::Approx(q.l).epsilon(1e-12).scale(1.0));
    CHECK(p.m == doctest::Approx(q.m).epsilon(1e-12).scale(1.0));
    CHECK(p.n == doctest::Approx(q.n).epsilon(1e-12).scale(1.0));
    CHECK(p.n >= 0.0);
    if (p.n == 0.0) CHECK(p.m >= 0.0);
    // both points lie on the plane
    CHECK(std::fabs(p.eval(a)) <= 1e-12 * a.norm());
    CHECK(std::fabs(p.eval(b)) <= 1e-12 * b.norm());
    // unit normal
    CHECK(p.normal().norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("collinear points do not span a plane with the focus") {
  ParaboloidModel m(1.0);
  CHECK(raises(errc::degenerate_line_through_focus, [&] {
    m.plane_through_focus({1.0, 2.0, 3.0}, {2.0, 4.0, 6.0});
  }));
  CHECK(raises(errc::degenerate_line_through_focus, [&] {
    m.plane_through_focus({1.0, 2.0, 3.0}, {-0.5, -1.0, -1.5});
  }));
  CHECK(raises(errc::degenerate_line_through_focus, [&] {
    m.plane_through_focus({1.0, 2.0, 3.0}, {0.0, 0.0, 0.0});
  }));
  CHECK(raises(errc::degenerate_line_through_focus, [&] {
    m.plane_through_focus({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  }));
}

TEST_CASE("inclination is the elevation above the focal plane") {
  Point3 p{1.0, 0.0, 1.0};
  CHECK(p.inclination() == doctest::Approx(M_PI_4));
  CHECK(Point3{0.0, 2.0, -2.0}.inclination() == doctest::Approx(-M_PI_4));
}

TEST_CASE("angular interval selection follows the witness") {
  CHECK(signed_interval_through(0.0, M_PI_2, M_PI_4) ==
        doctest::Approx(M_PI_2));
  CHECK(signed_interval_through(0.0, M_PI_2, -M_PI_4) ==
        doctest::Approx(M_PI_2 - 2.0 * M_PI));
  CHECK(signed_interval_through(1.0, 1.0, 2.0) == doctest::Approx(0.0));
  // wraps across the branch cut
  CHECK(signed_interval_through(3.0, -3.0, 3.1) ==
        doctest::Approx(2.0 * M_PI - 6.0));
}

TEST_CASE("wrap_two_pi lands in [0, 2 pi)") {
  CHECK(wrap_two_pi(-M_PI_2) == doctest::Approx(1.5 * M_PI));
  CHECK(wrap_two_pi(7.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_two_pi(0.0) == 0.0);
}
