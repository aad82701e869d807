#include "pdproj/projection.hpp"

#include <cmath>

namespace pdproj {

double central_scale(const ParaboloidModel& model, Point3 a) {
  double f = model.f();
  double r = a.r();
  if (r <= model.tol_abs())
    raise(errc::degenerate_on_axis, "point lies on the mirror axis");
  // Positive root, written to avoid cancellation for either sign of w.
  double hyp = std::hypot(a.w, r);
  if (a.w >= 0.0) return 2.0 * f * (a.w + hyp) / (r * r);
  return 2.0 * f / (hyp - a.w);
}

Point3 central_project(const ParaboloidModel& model, Point3 a) {
  return central_scale(model, a) * a;
}

ProjectionBundle double_project(const ParaboloidModel& model, Point3 a) {
  ProjectionBundle out;
  out.r_a = a.r();
  out.a1 = central_project(model, a);
  out.a_prime = ortho_to_director(model, a);
  out.a1_prime = ortho_to_director(model, out.a1);
  out.a2 = second_perspective(model, out.a_prime);
  out.a2_prime = ortho_to_director(model, out.a2);
  return out;
}

}  // namespace pdproj
