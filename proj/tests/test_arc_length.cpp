#include <doctest.h>

#include <cmath>
#include <random>

#include "pdproj/arc_length.hpp"
#include "pdproj/numeric.hpp"
#include "test_support.hpp"

using namespace pdproj;
using pdproj_test::raises;
using pdproj_test::rel_err;

TEST_CASE("segment and shadow lengths") {
  CHECK(space_length({1, 2, 3}, {4, 6, 3}) == doctest::Approx(5.0));
  CHECK(ortho_length({1, 2}, {4, 6}) == doctest::Approx(5.0));
}

TEST_CASE("focal circle arcs wrap to the minor arc") {
  ParaboloidModel m(1.0);
  CHECK(circle_arc_length(m, 0.0, M_PI_2) == doctest::Approx(M_PI));
  CHECK(circle_arc_length(m, M_PI_2, 0.0) == doctest::Approx(M_PI));
  CHECK(circle_arc_length(m, 0.0, 3.5 * M_PI) == doctest::Approx(M_PI));
  CHECK(circle_arc_length(m, 0.0, M_PI_2, true) ==
        doctest::Approx(3.0 * M_PI));
  ParaboloidModel m2(2.5);
  CHECK(circle_arc_length(m2, 1.0, 2.0) == doctest::Approx(5.0));
}

TEST_CASE("single-span elliptic approximation, worked quarter span") {
  double single = elliptic_arc_approx(2.0, 1.0, 0.0, M_PI_2);
  CHECK(single == doctest::Approx(2.4836470664490258).epsilon(1e-14));
  // independent quadrature of the same arc
  double oracle = integrate(
      [](double t) { return std::hypot(2.0 * std::sin(t), std::cos(t)); }, 0.0,
      M_PI_2);
  CHECK(oracle == doctest::Approx(2.4221120551369187).epsilon(1e-12));
  // the documented bias of the single span: about 2.5 percent high
  double bias = (single - oracle) / oracle;
  CHECK(bias > 0.02);
  CHECK(bias < 0.03);
}

TEST_CASE("the approximation is exact on circles") {
  CHECK(elliptic_arc_approx(1.5, 1.5, 0.3, 1.3) ==
        doctest::Approx(1.5).epsilon(1e-14));
  CHECK(elliptic_arc_approx(2.0, 2.0, -1.0, -1.0 + 1e-9) ==
        doctest::Approx(2e-9).epsilon(1e-9));
}

TEST_CASE("composite subdivision removes the bias") {
  double oracle = integrate(
      [](double t) { return std::hypot(2.0 * std::sin(t), std::cos(t)); }, 0.0,
      M_PI_2);
  double composite = elliptic_arc_composite(2.0, 1.0, 0.0, M_PI_2, 1024);
  CHECK(rel_err(composite, oracle) < 1e-6);
  // additivity across a split point
  double left = elliptic_arc_composite(2.0, 1.0, 0.0, 0.4, 512);
  double right = elliptic_arc_composite(2.0, 1.0, 0.4, M_PI_2, 512);
  CHECK(rel_err(left + right, oracle) < 1e-6);
  // one subdivision reduces to the single span
  CHECK(elliptic_arc_composite(2.0, 1.0, 0.0, M_PI_2, 1) ==
        doctest::Approx(elliptic_arc_approx(2.0, 1.0, 0.0, M_PI_2)));
}

TEST_CASE("elliptic spans are limited to less than a full turn") {
  CHECK(raises(errc::span_too_large,
               [] { elliptic_arc_approx(2.0, 1.0, 0.0, 2.0 * M_PI); }));
  CHECK(raises(errc::invalid_argument,
               [] { elliptic_arc_approx(1.0, 2.0, 0.0, 1.0); }));
  CHECK(raises(errc::invalid_argument,
               [] { elliptic_arc_approx(1.0, 0.0, 0.0, 1.0); }));
}

TEST_CASE("arc of a circle between abscissas") {
  // unit circle, ordinate of one sign: angle difference of the asines
  CHECK(circular_arc_by_abscissa(0.0, 1.0, 0.0, 1.0) ==
        doctest::Approx(M_PI_2).epsilon(1e-12));
  CHECK(circular_arc_by_abscissa(2.0, 0.5, 1.5, 2.5) ==
        doctest::Approx(0.5 * M_PI).epsilon(1e-12));
  CHECK(raises(errc::out_of_range,
               [] { circular_arc_by_abscissa(0.0, 1.0, 0.0, 1.5); }));
}

TEST_CASE("angle-walking abscissa form recovers r times the span") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    Point2 c{uniform_in(rng, -3, 3), uniform_in(rng, -3, 3)};
    double r = uniform_in(rng, 0.2, 4.0);
    double from = uniform_in(rng, -M_PI, M_PI);
    double span = uniform_in(rng, -6.0, 6.0);
    double got = circular_arc_by_abscissa(c, r, from, span);
    CHECK(rel_err(got, r * std::fabs(span)) < 1e-9);
  }
}

TEST_CASE("parabolic arc primitive, worked values") {
  ParaboloidModel m(1.0);
  CHECK(parabola_arc_length(m, 0.0, 2.0) ==
        doctest::Approx(2.295587149392638).epsilon(1e-14));
  CHECK(parabola_arc_length(m, -1.0, 1.0) ==
        doctest::Approx(2.0804576388691016).epsilon(1e-14));
  // odd primitive
  CHECK(parabola_arc_primitive(m, -1.7) ==
        doctest::Approx(-parabola_arc_primitive(m, 1.7)).epsilon(1e-14));
  CHECK(parabola_chord_proj(-1.5, 2.0) == doctest::Approx(3.5));
}

TEST_CASE("parabolic arcs agree with quadrature") {
  std::mt19937_64 rng(42);
  for (double f : {0.5, 1.0, 3.0}) {
    ParaboloidModel m(f);
    auto profile = [f](double x) {
      return Point3{x, 0.0, (x * x - 4.0 * f * f) / (4.0 * f)};
    };
    for (int i = 0; i < 50; ++i) {
      double xa = uniform_in(rng, -10 * f, 10 * f);
      double xb = uniform_in(rng, -10 * f, 10 * f);
      double got = parabola_arc_length(m, xa, xb);
      double oracle = arc_length_quadrature(profile, xa, xb);
      CHECK(rel_err(got, oracle) < 1e-9);
    }
  }
}

TEST_CASE("image lengths of a worked horizontal segment") {
  ParaboloidModel m(1.0);
  LineImageLengths lens = line_image_lengths(m, {2, 0, 0}, {0, 2, 0});
  CHECK(lens.l == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(lens.l_prime == doctest::Approx(2.0 * std::sqrt(2.0)));
  REQUIRE(lens.kind1.has_value());
  CHECK(*lens.kind1 == ConicKind::Circle);
  CHECK(lens.l1.analytic == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(lens.l1.rel_residual < 1e-9);
  CHECK(lens.l1_prime.analytic == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(lens.l1_prime.rel_residual < 1e-9);
  REQUIRE(lens.kind2.has_value());
  CHECK(*lens.kind2 == ConicKind::Ellipse);
  CHECK(lens.l2.rel_residual < 0.05);
  REQUIRE(lens.l2.refined.has_value());
  CHECK(*lens.l2.refined_residual < 1e-4);
  CHECK(lens.l2_prime.rel_residual < 1e-9);
}

TEST_CASE("image lengths of a vertical segment") {
  ParaboloidModel m(1.0);
  LineImageLengths lens = line_image_lengths(m, {1, 0, 0}, {1, 0, 2});
  CHECK(lens.l == doctest::Approx(2.0));
  CHECK(lens.l_prime == doctest::Approx(0.0).scale(1.0));
  REQUIRE(lens.kind1.has_value());
  CHECK(*lens.kind1 == ConicKind::Parabola);
  // first views are at abscissas 2 and 4 + 2 sqrt 5 on the profile
  double c = 4.0 + 2.0 * std::sqrt(5.0);
  CHECK(lens.l1.analytic ==
        doctest::Approx(parabola_arc_length(m, 2.0, c)).epsilon(1e-12));
  CHECK(lens.l1.rel_residual < 1e-9);
  CHECK(lens.l1_prime.analytic == doctest::Approx(c - 2.0).epsilon(1e-12));
  // the second view collapses to a point
  CHECK_FALSE(lens.kind2.has_value());
  CHECK(lens.l2.analytic == 0.0);
  CHECK(lens.l2_prime.analytic == 0.0);
}

TEST_CASE("axial segments may pass under the vertex but not over the axis") {
  ParaboloidModel m(1.0);
  // crossing the axis above the focal plane: the image is unbounded
  CHECK(raises(errc::degenerate_on_axis, [&] {
    line_image_lengths(m, {1.0, 0.0, 1.0}, {-1.0, 0.0, 1.0});
  }));
  // crossing below: the image runs through the vertex, length 2 F(c)
  LineImageLengths lens = line_image_lengths(m, {1, 0, -1}, {-1, 0, -1});
  REQUIRE(lens.kind1.has_value());
  CHECK(*lens.kind1 == ConicKind::Parabola);
  double c = 2.0 * std::sqrt(2.0) - 2.0;
  CHECK(lens.l1.analytic ==
        doctest::Approx(2.0 * parabola_arc_primitive(m, c)).epsilon(1e-12));
  CHECK(lens.l1.rel_residual < 1e-9);
  CHECK(lens.l1_prime.analytic == doctest::Approx(2.0 * c).epsilon(1e-12));
}

TEST_CASE("degenerate segments") {
  ParaboloidModel m(1.0);
  // coincident endpoints: every length is zero, no section is classified
  LineImageLengths lens = line_image_lengths(m, {1, 2, 3}, {1, 2, 3});
  CHECK(lens.l == 0.0);
  CHECK(lens.l1.analytic == 0.0);
  CHECK_FALSE(lens.kind1.has_value());
  CHECK_FALSE(lens.kind2.has_value());
  // a segment aimed at the focus has no section plane
  CHECK(raises(errc::degenerate_line_through_focus, [&] {
    line_image_lengths(m, {1, 1, 1}, {-1, -1, -1});
  }));
}

TEST_CASE("image lengths are invariant under rotation about the axis") {
  ParaboloidModel m(1.0);
  std::mt19937_64 rng(43);
  for (int i = 0; i < 40; ++i) {
    Point3 a{uniform_in(rng, -4, 4), uniform_in(rng, -4, 4),
             uniform_in(rng, -4, 4)};
    Point3 b{uniform_in(rng, -4, 4), uniform_in(rng, -4, 4),
             uniform_in(rng, -4, 4)};
    double phi = uniform_in(rng, -M_PI, M_PI);
    LineImageLengths base, turned;
    try {
      base = line_image_lengths(m, a, b);
      turned = line_image_lengths(m, rotate_about_w(a, phi),
                                  rotate_about_w(b, phi));
    } catch (const Error&) {
      continue;
    }
    CHECK(rel_err(turned.l, base.l) < 1e-12);
    if (base.kind1 && turned.kind1) {
      CHECK(*turned.kind1 == *base.kind1);
      CHECK(std::fabs(turned.l1.analytic - base.l1.analytic) <=
            1e-9 * (1.0 + base.l1.analytic));
      CHECK(std::fabs(turned.l1_prime.analytic - base.l1_prime.analytic) <=
            1e-9 * (1.0 + base.l1_prime.analytic));
    }
  }
}

TEST_CASE("random segments keep every arc near its oracle") {
  ParaboloidModel m(1.0);
  std::mt19937_64 rng(44);
  int seen = 0;
  for (int i = 0; i < 200; ++i) {
    Point3 a{uniform_in(rng, -5, 5), uniform_in(rng, -5, 5),
             uniform_in(rng, -5, 5)};
    Point3 b{uniform_in(rng, -5, 5), uniform_in(rng, -5, 5),
             uniform_in(rng, -5, 5)};
    LineImageLengths lens;
    try {
      lens = line_image_lengths(m, a, b);
    } catch (const Error&) {
      continue;  // axis crossings and focus rays are legitimately rejected
    }
    ++seen;
    auto check_view = [](ConicKind kind, const ArcResult& arc,
                         const ArcResult& shadow) {
      if (kind == ConicKind::Ellipse) {
        REQUIRE(arc.refined_residual.has_value());
        CHECK(*arc.refined_residual < 1e-2);
      } else {
        CHECK(arc.rel_residual < 1e-9);
      }
      CHECK(shadow.rel_residual < 1e-9);
    };
    if (lens.kind1) check_view(*lens.kind1, lens.l1, lens.l1_prime);
    if (lens.kind2) check_view(*lens.kind2, lens.l2, lens.l2_prime);
  }
  CHECK(seen > 150);
}
