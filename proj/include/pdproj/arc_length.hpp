#pragma once

#include <optional>

#include "pdproj/conics.hpp"
#include "pdproj/projection.hpp"

namespace pdproj {

// An arc length measured two ways: a closed form (or named approximation) and
// an independent quadrature of the same arc. rel_residual compares them as
// |analytic - oracle| / max(oracle, tol_abs). `refined` is present for
// elliptic arcs, where the single-span approximation is coarse and its
// composite subdivision converges to the true length.
struct ArcResult {
  double analytic = 0.0;
  double oracle = 0.0;
  double rel_residual = 0.0;
  std::optional<double> refined;
  std::optional<double> refined_residual;  // refined vs oracle
};

// Lengths attached to the images of the segment [a, b]:
//   l        the segment itself
//   l_prime  its shadow on the director plane
//   l1       first-view arc on the mirror; l1_prime that arc's shadow
//   l2 / l2_prime   the same for the second view
// kind1/kind2 name the section family carrying each view's arc; kind2 is
// empty for vertical segments, whose second view collapses to one point.
struct LineImageLengths {
  double l = 0.0;
  double l_prime = 0.0;
  std::optional<ConicKind> kind1;
  std::optional<ConicKind> kind2;
  ArcResult l1;
  ArcResult l1_prime;
  ArcResult l2;
  ArcResult l2_prime;
};

double space_length(Point3 a, Point3 b);
double ortho_length(Point2 a, Point2 b);

// 2 f times the angular difference wrapped to [0, pi] (the minor arc);
// major_arc selects the complement.
double circle_arc_length(const ParaboloidModel& model, double phi_a,
                         double phi_b, bool major_arc = false);

// Chord-times-span approximation of the elliptic arc between parametric
// angles t1 and t2 on the canonical ellipse with semi-axes a >= b > 0:
// chord * span / (2 sin(span/2)). Exact for a == b; O(span^2) biased
// otherwise. Throws span_too_large at |t2 - t1| >= 2 pi.
double elliptic_arc_approx(double a, double b, double t1, double t2);

// The same approximation summed over `subdivisions` equal sub-spans, which
// removes its bias.
double elliptic_arc_composite(double a, double b, double t1, double t2,
                              int subdivisions = 1024);

// Arc length between abscissas u1 and u2 on a circle of radius r centered at
// abscissa center_u, for an arc on which the ordinate offset keeps one sign:
// r * |asin((u2-center_u)/r) - asin((u1-center_u)/r)|. Throws out_of_range
// when an abscissa leaves the circle's extent beyond a small slack.
double circular_arc_by_abscissa(double center_u, double r, double u1,
                                double u2);

// Caller-facing form for a full arc given by center-frame angles: walks the
// arc from th_from over a signed span, splits it where the ordinate offset
// changes sign, and applies the abscissa form per piece.
double circular_arc_by_abscissa(Point2 center, double r, double th_from,
                                double signed_span);

// Shadow of a parabolic-section arc is straight: |x_a - x_b|.
double parabola_chord_proj(double x_a, double x_b);

// Arc length from the vertex to abscissa x along a parabolic section:
// F(x) = f asinh(x/(2f)) + x sqrt(x^2 + 4 f^2)/(4 f), odd in x; and the arc
// between two abscissas, |F(x_a) - F(x_b)|.
double parabola_arc_primitive(const ParaboloidModel& model, double x);
double parabola_arc_length(const ParaboloidModel& model, double x_a,
                           double x_b);

LineImageLengths line_image_lengths(const ParaboloidModel& model, Point3 a,
                                    Point3 b);

}  // namespace pdproj
