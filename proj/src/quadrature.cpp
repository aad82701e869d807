#include "pdproj/quadrature.hpp"

#include <cmath>

namespace pdproj {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& fn, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double eps, int depth, int max_depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = fn(lm), frm = fn(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  if (depth >= max_depth)
    raise(errc::no_convergence, "adaptive quadrature hit maximum depth");
  return adapt(fn, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth + 1,
               max_depth) +
         adapt(fn, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth + 1,
               max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b,
                 QuadratureOptions opt) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = fn(a), fb = fn(b), fm = fn(m);
  double whole = simpson(a, fa, b, fb, fm);
  double eps = std::max(opt.abs_tol, opt.rel_tol * std::fabs(whole));
  return adapt(fn, a, fa, b, fb, m, fm, whole, eps, 0, opt.max_depth);
}

double path_length(const Path3& path, double t0, double t1,
                   QuadratureOptions opt) {
  auto speed = [&](double t) { return path.derivative(t).norm(); };
  double len = integrate(speed, t0, t1, opt);
  return std::fabs(len);
}

double arc_length_quadrature(const std::function<Point3(double)>& curve,
                             double t1, double t2, double tol) {
  Path3 path;
  path.point = curve;
  path.derivative = [&curve](double t) { return numeric_derivative(curve, t); };
  QuadratureOptions opt;
  opt.rel_tol = tol;
  return path_length(path, t1, t2, opt);
}

Point3 numeric_derivative(const std::function<Point3(double)>& fn, double t) {
  double h = 1e-4 * std::max(1.0, std::fabs(t));
  Point3 p2 = fn(t + 2.0 * h), p1 = fn(t + h);
  Point3 m1 = fn(t - h), m2 = fn(t - 2.0 * h);
  Point3 num = 8.0 * (p1 - m1) - (p2 - m2);
  return (1.0 / (12.0 * h)) * num;
}

}  // namespace pdproj
