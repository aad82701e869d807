#include "pdproj/conics.hpp"

#include <cmath>

namespace pdproj {

const char* conic_kind_name(ConicKind kind) {
  switch (kind) {
    case ConicKind::Circle: return "circle";
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Parabola: return "parabola";
  }
  return "unknown";
}

const CircleData& ConicSection::circle() const {
  if (kind != ConicKind::Circle)
    raise(errc::invalid_argument, "section is not a circle");
  return std::get<CircleData>(data);
}

const EllipseData& ConicSection::ellipse() const {
  if (kind != ConicKind::Ellipse)
    raise(errc::not_elliptic, "section is not an ellipse");
  return std::get<EllipseData>(data);
}

const ParabolaData& ConicSection::parabola() const {
  if (kind != ConicKind::Parabola)
    raise(errc::invalid_argument, "section is not a parabola");
  return std::get<ParabolaData>(data);
}

namespace {

void require_elliptic(const ParaboloidModel& model, const FocalPlane& plane) {
  double an = std::fabs(plane.n);
  if (an <= model.tol_rel() || an >= 1.0 - model.tol_rel())
    raise(errc::not_elliptic, "plane does not cut an elliptic section");
}

}  // namespace

Point3 ellipse_center(const ParaboloidModel& model, const FocalPlane& plane) {
  require_elliptic(model, plane);
  double f = model.f();
  Point3 c;
  // Horizontal coordinates from completing the square of the shadow circle;
  // height from the plane equation itself so the center satisfies it to
  // rounding (algebraically 2f (l^2 + m^2) / n^2).
  c.u = -2.0 * f * plane.l / plane.n;
  c.v = -2.0 * f * plane.m / plane.n;
  c.w = -(plane.l * c.u + plane.m * c.v) / plane.n;
  return c;
}

std::pair<double, double> ellipse_axes(const ParaboloidModel& model,
                                       const FocalPlane& plane) {
  require_elliptic(model, plane);
  Point3 c = ellipse_center(model, plane);
  double q = (c.w / c.r()) * (c.w / c.r());
  double f = model.f();
  return {2.0 * f * (1.0 + q), 2.0 * f * std::sqrt(1.0 + q)};
}

ConicSection ellipse_frame(const ParaboloidModel& model,
                           const FocalPlane& plane) {
  require_elliptic(model, plane);
  double l = plane.l, m = plane.m, n = plane.n;
  double h = std::hypot(l, m);  // = sqrt(1 - n^2) for a unit normal
  EllipseData e;
  e.center = ellipse_center(model, plane);
  auto axes = ellipse_axes(model, plane);
  e.a = axes.first;
  e.b = axes.second;
  e.j_dir = {-n * l / h, -n * m / h, h};  // in-plane steepest ascent
  e.k_dir = {m / h, -l / h, 0.0};  // horizontal; (j, k, normal) right-handed
  e.phi_oe = polar_angle(m, l);    // two-argument arctangent of (l, m)
  ConicSection sec;
  sec.kind = ConicKind::Ellipse;
  sec.plane = plane;
  sec.data = e;
  return sec;
}

ConicSection classify_section(const ParaboloidModel& model,
                              const FocalPlane& plane) {
  double an = std::fabs(plane.n);
  if (an >= 1.0 - model.tol_rel()) {
    ConicSection sec;
    sec.kind = ConicKind::Circle;
    sec.plane = plane;
    sec.data = CircleData{2.0 * model.f()};
    return sec;
  }
  if (an <= model.tol_rel()) {
    ConicSection sec;
    sec.kind = ConicKind::Parabola;
    sec.plane = plane;
    sec.data = ParabolaData{std::atan2(-plane.l, plane.m)};
    return sec;
  }
  return ellipse_frame(model, plane);
}

namespace {

void require_on_plane(const FocalPlane& plane, Point3 p, double tol,
                      double scale) {
  if (tol < 0.0) tol = 1e-9 * (p.norm() + scale);
  if (std::fabs(plane.eval(p)) > tol)
    raise(errc::not_on_plane, "point is off the section plane");
}

}  // namespace

LocalPoint to_local(const ConicSection& sec, Point3 p, double tol) {
  const EllipseData& e = sec.ellipse();
  require_on_plane(sec.plane, p, tol, e.a);
  Point3 d = p - e.center;
  LocalPoint out;
  out.j = dot(d, e.j_dir);
  out.k = dot(d, e.k_dir);
  out.t = std::atan2(out.k / e.b, out.j / e.a);
  return out;
}

Point3 ellipse_point(const ConicSection& sec, double t) {
  const EllipseData& e = sec.ellipse();
  return e.center + (e.a * std::cos(t)) * e.j_dir +
         (e.b * std::sin(t)) * e.k_dir;
}

double parabola_abscissa(const ConicSection& sec, Point3 p, double tol) {
  const ParabolaData& par = sec.parabola();
  require_on_plane(sec.plane, p, tol, 0.0);
  return rotate_about_w(p, par.phi).u;
}

Path3 circle_section_path(const ParaboloidModel& model) {
  double R = 2.0 * model.f();
  Path3 path;
  path.point = [R](double th) {
    return Point3{R * std::cos(th), R * std::sin(th), 0.0};
  };
  path.derivative = [R](double th) {
    return Point3{-R * std::sin(th), R * std::cos(th), 0.0};
  };
  return path;
}

Path3 ellipse_section_path(const EllipseData& e) {
  Path3 path;
  path.point = [e](double t) {
    return e.center + (e.a * std::cos(t)) * e.j_dir +
           (e.b * std::sin(t)) * e.k_dir;
  };
  path.derivative = [e](double t) {
    return (-e.a * std::sin(t)) * e.j_dir + (e.b * std::cos(t)) * e.k_dir;
  };
  return path;
}

Path3 parabola_section_path(const ParaboloidModel& model,
                            const ParabolaData& p) {
  double f = model.f();
  double phi = p.phi;
  Path3 path;
  path.point = [f, phi](double X) {
    Point3 local{X, 0.0, (X * X - 4.0 * f * f) / (4.0 * f)};
    return rotate_about_w(local, -phi);
  };
  path.derivative = [f, phi](double X) {
    Point3 local{1.0, 0.0, X / (2.0 * f)};
    return rotate_about_w(local, -phi);
  };
  return path;
}

}  // namespace pdproj
