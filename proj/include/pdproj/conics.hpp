#pragma once

#include <utility>
#include <variant>

#include "pdproj/geometry.hpp"
#include "pdproj/quadrature.hpp"

namespace pdproj {

// Intersection of the mirror with a plane through the focus is one of three
// curve families, decided by the w-component n of the unit normal:
//   |n| ~ 1  horizontal plane: the radius-2f circle about the axis
//   |n| ~ 0  vertical plane through the axis: a parabola congruent to the
//            mirror's own profile
//   else     an ellipse (whose orthogonal shadow is a circle)
enum class ConicKind { Circle, Ellipse, Parabola };

const char* conic_kind_name(ConicKind kind);

struct CircleData {
  double radius = 0.0;  // always 2 f
};

struct EllipseData {
  Point3 center;   // on the section plane
  double a = 0.0;  // semi-major, 2 f / n^2
  double b = 0.0;  // semi-minor, 2 f / |n|; b^2 = 2 f a
  Point3 j_dir;    // unit major-axis direction, w-component > 0
  Point3 k_dir;    // unit minor-axis direction, horizontal
  double phi_oe = 0.0;  // atan2(l, m) for normal (l, m, n)
};

struct ParabolaData {
  // Rotating the section about the w-axis by phi brings it into the v = 0
  // plane with its opening along +w; phi = atan2(-l, m).
  double phi = 0.0;
};

struct ConicSection {
  ConicKind kind = ConicKind::Circle;
  FocalPlane plane;
  std::variant<CircleData, EllipseData, ParabolaData> data;

  const CircleData& circle() const;
  const EllipseData& ellipse() const;      // throws not_elliptic otherwise
  const ParabolaData& parabola() const;
};

ConicSection classify_section(const ParaboloidModel& model,
                              const FocalPlane& plane);

// Elliptic-case pieces; each throws not_elliptic when the plane is within
// tolerance of horizontal or vertical.
Point3 ellipse_center(const ParaboloidModel& model, const FocalPlane& plane);
std::pair<double, double> ellipse_axes(const ParaboloidModel& model,
                                       const FocalPlane& plane);
ConicSection ellipse_frame(const ParaboloidModel& model,
                           const FocalPlane& plane);

// Coordinates of p in the ellipse frame: p = center + j * j_dir + k * k_dir,
// with parametric angle t = atan2(k / b, j / a). Throws not_elliptic for a
// non-elliptic section and not_on_plane when p is off the section plane by
// more than tol (tol < 0 picks 1e-9 of the problem scale).
struct LocalPoint {
  double j = 0.0;
  double k = 0.0;
  double t = 0.0;
};

LocalPoint to_local(const ConicSection& sec, Point3 p, double tol = -1.0);

// Point of the ellipse at parametric angle t.
Point3 ellipse_point(const ConicSection& sec, double t);

// Signed abscissa of p in the rotated frame of a parabolic section. Throws
// not_on_plane when p is off the section plane.
double parabola_abscissa(const ConicSection& sec, Point3 p, double tol = -1.0);

// Parametric forms of the three section families, with analytic derivatives,
// for quadrature-based cross-checks.
Path3 circle_section_path(const ParaboloidModel& model);
Path3 ellipse_section_path(const EllipseData& e);
Path3 parabola_section_path(const ParaboloidModel& model,
                            const ParabolaData& p);

}  // namespace pdproj
