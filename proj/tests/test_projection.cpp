#include <doctest.h>

#include <cmath>
#include <random>

#include "pdproj/numeric.hpp"
#include "pdproj/projection.hpp"
#include "test_support.hpp"

using namespace pdproj;
using pdproj_test::raises;
using pdproj_test::rel_err;

TEST_CASE("first view of a worked point") {
  ParaboloidModel m(1.0);
  Point3 a1 = central_project(m, {2.0, 0.0, 5.0});
  CHECK(a1.u == doctest::Approx(10.385164807134505).epsilon(1e-14));
  CHECK(a1.v == 0.0);
  CHECK(a1.w == doctest::Approx(25.96291201783626).epsilon(1e-14));
  CHECK(m.on_surface(a1));
}

TEST_CASE("second view of a worked director-plane point") {
  ParaboloidModel m(1.0);
  Point3 a2 = second_perspective(m, {2.0, 0.0});
  double c = 2.0 * std::sqrt(2.0) - 2.0;
  CHECK(a2.u == doctest::Approx(c).epsilon(1e-14));
  CHECK(a2.v == 0.0);
  CHECK(a2.w == doctest::Approx(-c).epsilon(1e-14));
}

TEST_CASE("surface points are fixed points of the central projection") {
  ParaboloidModel m(0.5);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    double u = uniform_in(rng, -5.0, 5.0);
    double v = uniform_in(rng, -5.0, 5.0);
    if (std::hypot(u, v) < 1e-3) continue;
    Point3 p{u, v, m.surface_w(u, v)};
    Point3 q = central_project(m, p);
    CHECK((q - p).norm() <= 1e-9 * p.norm());
  }
}

TEST_CASE("projection stays on the ray and on the surface in both regimes") {
  std::mt19937_64 rng(22);
  for (double f : {0.5, 1.0, 3.0}) {
    ParaboloidModel m(f);
    for (int i = 0; i < 300; ++i) {
      Point3 a{uniform_in(rng, -10 * f, 10 * f),
               uniform_in(rng, -10 * f, 10 * f),
               uniform_in(rng, -10 * f, 10 * f)};
      if (a.r() < 1e-6 * f) continue;
      double t = central_scale(m, a);
      CHECK(t > 0.0);
      Point3 a1 = central_project(m, a);
      CHECK(std::fabs(m.surface_residual(a1)) <=
            1e-9 * (a1.u * a1.u + a1.v * a1.v + 4 * f * f));
      CHECK(cross(a1, a).norm() <= 1e-9 * a1.norm() * a.norm());
      CHECK(dot(a1, a) > 0.0);
    }
  }
}

TEST_CASE("projection is idempotent") {
  ParaboloidModel m(2.0);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    Point3 a{uniform_in(rng, -9, 9), uniform_in(rng, -9, 9),
             uniform_in(rng, -9, 9)};
    if (a.r() < 1e-3) continue;
    Point3 once = central_project(m, a);
    Point3 twice = central_project(m, once);
    CHECK((twice - once).norm() <= 1e-10 * once.norm());
  }
}

TEST_CASE("projection commutes with uniform scaling of model and point") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 100; ++i) {
    double f = uniform_in(rng, 0.2, 4.0);
    double s = uniform_in(rng, 0.1, 8.0);
    Point3 a{uniform_in(rng, -5, 5), uniform_in(rng, -5, 5),
             uniform_in(rng, -5, 5)};
    if (a.r() < 1e-3) continue;
    Point3 small = central_project(ParaboloidModel(f), a);
    Point3 big = central_project(ParaboloidModel(s * f), s * a);
    CHECK((big - s * small).norm() <= 1e-10 * big.norm());
  }
}

TEST_CASE("axis points have no defined image") {
  ParaboloidModel m(1.0);
  CHECK(raises(errc::degenerate_on_axis,
               [&] { central_project(m, {0.0, 0.0, 3.0}); }));
  CHECK(raises(errc::degenerate_on_axis,
               [&] { central_project(m, {0.0, 0.0, 0.0}); }));
  CHECK(raises(errc::degenerate_on_axis,
               [&] { double_project(m, {0.0, 0.0, -2.0}); }));
}

TEST_CASE("the full bundle is self-consistent") {
  ParaboloidModel m(1.3);
  std::mt19937_64 rng(25);
  for (int i = 0; i < 200; ++i) {
    Point3 a{uniform_in(rng, -8, 8), uniform_in(rng, -8, 8),
             uniform_in(rng, -8, 8)};
    if (a.r() < 1e-3) continue;
    ProjectionBundle b = double_project(m, a);
    CHECK(b.r_a == doctest::Approx(a.r()));
    CHECK(b.a_prime.u == a.u);
    CHECK(b.a_prime.v == a.v);
    CHECK(b.a1_prime.u == b.a1.u);
    CHECK(b.a1_prime.v == b.a1.v);
    CHECK(b.a2_prime.u == b.a2.u);
    CHECK(b.a2_prime.v == b.a2.v);
    CHECK(m.on_surface(b.a1));
    CHECK(m.on_surface(b.a2));
    // the second view depends only on the point's shadow
    ProjectionBundle raised =
        double_project(m, {a.u, a.v, a.w + uniform_in(rng, 0.0, 5.0)});
    CHECK(raised.a2.u == b.a2.u);
    CHECK(raised.a2.v == b.a2.v);
    CHECK(raised.a2.w == b.a2.w);
  }
}

TEST_CASE("second view lies below the focal plane") {
  // the lifted shadow sits at w = -2f, so its image keeps negative w
  ParaboloidModel m(1.0);
  std::mt19937_64 rng(26);
  for (int i = 0; i < 100; ++i) {
    Point3 a{uniform_in(rng, -8, 8), uniform_in(rng, -8, 8),
             uniform_in(rng, -8, 8)};
    if (a.r() < 1e-3) continue;
    CHECK(double_project(m, a).a2.w < 0.0);
  }
}
