#pragma once

#include <functional>

#include "pdproj/geometry.hpp"

namespace pdproj {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 40;
};

// Adaptive Simpson integration of fn over [a, b]. Throws no_convergence when
// the error estimate is still above tolerance at max_depth.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 QuadratureOptions opt = {});

// Parametric space curve with an analytic derivative.
struct Path3 {
  std::function<Point3(double)> point;
  std::function<Point3(double)> derivative;
};

// Arc length of path over [t0, t1] by quadrature of |derivative|.
double path_length(const Path3& path, double t0, double t1,
                   QuadratureOptions opt = {});

// Arc length of a bare position function, differentiated by a five-point
// stencil. Independent of any analytic derivative the caller might hold.
double arc_length_quadrature(const std::function<Point3(double)>& curve,
                             double t1, double t2, double tol = 1e-10);

// Five-point centered stencil, used to cross-check analytic derivatives
// supplied in Path3.
Point3 numeric_derivative(const std::function<Point3(double)>& fn, double t);

}  // namespace pdproj
