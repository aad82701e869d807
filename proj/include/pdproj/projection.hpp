#pragma once

#include "pdproj/geometry.hpp"

namespace pdproj {

// All five images of a scene point under the two-view construction:
//   a1       first view: intersection of ray focus->a with the mirror
//   a_prime  orthogonal projection of a onto the director plane
//   a1_prime orthogonal projection of a1 onto the director plane
//   a2       second view: intersection of the ray from the focus through the
//            lifted a_prime with the mirror
//   a2_prime orthogonal projection of a2 onto the director plane
//   r_a      axis distance of a
struct ProjectionBundle {
  Point3 a1;
  Point2 a_prime;
  Point2 a1_prime;
  Point3 a2;
  Point2 a2_prime;
  double r_a = 0.0;
};

// Scale factor t > 0 with a1 = t * a on the mirror: the positive root of
// t^2 r^2 = 4 f t w + 4 f^2. Throws degenerate_on_axis when the axis
// distance of a is at or below tol_abs.
double central_scale(const ParaboloidModel& model, Point3 a);

Point3 central_project(const ParaboloidModel& model, Point3 a);

// Orthogonal projection onto the director plane w = -2 f; the common w is
// implied, only (u, v) is carried.
inline Point2 ortho_to_director(const ParaboloidModel& model, Point3 p) {
  (void)model;
  return {p.u, p.v};
}

// A director-plane point restored to 3-space.
inline Point3 lift_from_director(const ParaboloidModel& model, Point2 p) {
  return {p.u, p.v, -2.0 * model.f()};
}

// Second view: perspective of a director-plane point on the mirror.
inline Point3 second_perspective(const ParaboloidModel& model, Point2 a_prime) {
  return central_project(model, lift_from_director(model, a_prime));
}

ProjectionBundle double_project(const ParaboloidModel& model, Point3 a);

}  // namespace pdproj
