#include "pdproj/geometry.hpp"

#include <cmath>
#include <string>

namespace pdproj {

const char* errc_name(errc code) {
  switch (code) {
    case errc::degenerate_origin: return "degenerate_origin";
    case errc::degenerate_on_axis: return "degenerate_on_axis";
    case errc::degenerate_line_through_focus: return "degenerate_line_through_focus";
    case errc::not_elliptic: return "not_elliptic";
    case errc::not_on_plane: return "not_on_plane";
    case errc::span_too_large: return "span_too_large";
    case errc::out_of_range: return "out_of_range";
    case errc::no_convergence: return "no_convergence";
    case errc::region_inverted: return "region_inverted";
    case errc::parse_error: return "parse_error";
    case errc::validation_error: return "validation_error";
    case errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

void raise(errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

Point3 normalized(Point3 p) {
  double n = p.norm();
  if (!(n > 0.0)) raise(errc::invalid_argument, "cannot normalize zero vector");
  return {p.u / n, p.v / n, p.w / n};
}

double polar_angle(double u, double v) {
  if (u == 0.0 && v == 0.0)
    raise(errc::degenerate_origin, "polar angle undefined at the origin");
  double th = std::atan2(v, u);
  // atan2 returns -pi for (-x, -0); keep the range (-pi, pi].
  if (th == -M_PI) th = M_PI;
  return th;
}

Point3 rotate_about_w(Point3 p, double phi) {
  double c = std::cos(phi), s = std::sin(phi);
  return {c * p.u + s * p.v, -s * p.u + c * p.v, p.w};
}

FocalPlane::FocalPlane(double l_, double m_, double n_) {
  double norm = std::sqrt(l_ * l_ + m_ * m_ + n_ * n_);
  if (!(norm > 0.0) || !std::isfinite(norm))
    raise(errc::invalid_argument, "plane normal must be nonzero and finite");
  l = l_ / norm;
  m = m_ / norm;
  n = n_ / norm;
}

ParaboloidModel::ParaboloidModel(double focal, double tol_rel, double tol_abs)
    : f_(focal), tol_rel_(tol_rel), tol_abs_(tol_abs) {
  if (!(focal > 0.0) || !std::isfinite(focal))
    raise(errc::invalid_argument, "focal parameter must be positive and finite");
  if (!(tol_rel > 0.0) || tol_rel > 1e-6)
    raise(errc::invalid_argument, "tol_rel must lie in (0, 1e-6]");
  if (tol_abs_ < 0.0) tol_abs_ = 1e-12 * f_;
  if (!(tol_abs_ > 0.0) || !std::isfinite(tol_abs_))
    raise(errc::invalid_argument, "tol_abs must be positive and finite");
}

bool ParaboloidModel::on_surface(Point3 p) const {
  double scale = p.u * p.u + p.v * p.v + 4.0 * f_ * f_;
  return std::fabs(surface_residual(p)) <= tol_abs_ + tol_rel_ * scale;
}

FocalPlane ParaboloidModel::plane_through_focus(Point3 a, Point3 b) const {
  Point3 nrm = cross(a, b);
  double thresh = tol_abs_ + tol_rel_ * a.norm() * b.norm();
  if (nrm.norm() <= thresh)
    raise(errc::degenerate_line_through_focus,
          "points are collinear with the focus");
  // Canonical orientation: n >= 0, then m >= 0, then l > 0.
  if (nrm.w < 0.0 || (nrm.w == 0.0 && (nrm.v < 0.0 || (nrm.v == 0.0 && nrm.u < 0.0))))
    nrm = -1.0 * nrm;
  return FocalPlane(nrm.u, nrm.v, nrm.w);
}

}  // namespace pdproj
