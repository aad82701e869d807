#pragma once

#include <cmath>

#include "pdproj/errors.hpp"

namespace pdproj {

struct Point2 {
  double u = 0.0;
  double v = 0.0;

  double norm() const { return std::hypot(u, v); }
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.u + b.u, a.v + b.v}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.u - b.u, a.v - b.v}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.u, s * p.v}; }
inline double dot(Point2 a, Point2 b) { return a.u * b.u + a.v * b.v; }
inline double cross(Point2 a, Point2 b) { return a.u * b.v - a.v * b.u; }

struct Point3 {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  // Distance from the w-axis.
  double r() const { return std::hypot(u, v); }
  double norm() const { return std::hypot(std::hypot(u, v), w); }
  // Elevation of the ray from the origin above the focal plane.
  double inclination() const { return std::atan2(w, r()); }
  Point2 uv() const { return {u, v}; }
};

inline Point3 operator+(Point3 a, Point3 b) {
  return {a.u + b.u, a.v + b.v, a.w + b.w};
}
inline Point3 operator-(Point3 a, Point3 b) {
  return {a.u - b.u, a.v - b.v, a.w - b.w};
}
inline Point3 operator*(double s, Point3 p) {
  return {s * p.u, s * p.v, s * p.w};
}
inline double dot(Point3 a, Point3 b) {
  return a.u * b.u + a.v * b.v + a.w * b.w;
}
inline Point3 cross(Point3 a, Point3 b) {
  return {a.v * b.w - a.w * b.v, a.w * b.u - a.u * b.w,
          a.u * b.v - a.v * b.u};
}
Point3 normalized(Point3 p);

// Full-quadrant angle of (u, v) from the +u axis, in (-pi, pi]. Throws
// degenerate_origin at the origin, where the angle is undefined.
double polar_angle(double u, double v);
inline double polar_angle(Point2 p) { return polar_angle(p.u, p.v); }
inline double polar_angle(Point3 p) { return polar_angle(p.u, p.v); }

// Rotates p about the w-axis so that direction angle `phi` maps to the +u
// axis: (u, v) -> (u cos phi + v sin phi, -u sin phi + v cos phi).
Point3 rotate_about_w(Point3 p, double phi);

// Plane l*u + m*v + n*w = 0 through the origin with unit normal (l, m, n).
struct FocalPlane {
  double l = 0.0;
  double m = 0.0;
  double n = 1.0;

  FocalPlane() = default;
  FocalPlane(double l_, double m_, double n_);  // normalizes; rejects ~zero

  double eval(Point3 p) const { return l * p.u + m * p.v + n * p.w; }
  Point3 normal() const { return {l, m, n}; }
};

// Mirror model: paraboloid of revolution u^2 + v^2 = 4 f w + 4 f^2 with its
// focus at the origin and the w-axis as the optical axis. The second view
// plane sits at w = -2 f.
class ParaboloidModel {
 public:
  explicit ParaboloidModel(double focal, double tol_rel = 1e-9,
                           double tol_abs = -1.0);

  double f() const { return f_; }
  double tol_rel() const { return tol_rel_; }
  double tol_abs() const { return tol_abs_; }

  // Unique surface height above (u, v).
  double surface_w(double u, double v) const {
    return (u * u + v * v - 4.0 * f_ * f_) / (4.0 * f_);
  }

  // Surface equation residual u^2 + v^2 - 4 f w - 4 f^2.
  double surface_residual(Point3 p) const {
    return p.u * p.u + p.v * p.v - 4.0 * f_ * p.w - 4.0 * f_ * f_;
  }

  // |residual| <= tol_abs + tol_rel * (u^2 + v^2 + 4 f^2).
  bool on_surface(Point3 p) const;

  // Plane through the origin containing a and b. Throws
  // degenerate_line_through_focus when a, b, origin are collinear (includes
  // a == b and either point at the origin). The normal sign is fixed so that
  // n >= 0, then m >= 0 when n == 0, then l > 0.
  FocalPlane plane_through_focus(Point3 a, Point3 b) const;

 private:
  double f_;
  double tol_rel_;
  double tol_abs_;
};

}  // namespace pdproj
