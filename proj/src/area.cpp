#include "pdproj/area.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pdproj/numeric.hpp"
#include "pdproj/quadrature.hpp"

namespace pdproj {

namespace {

double checked_span(double phi_b, double phi_a) {
  if (!(phi_a >= phi_b))
    raise(errc::invalid_argument, "angular range must satisfy phi_a >= phi_b");
  double span = phi_a - phi_b;
  if (span > 2.0 * M_PI * (1.0 + 1e-12))
    raise(errc::span_too_large, "angular span exceeds a full turn");
  return span;
}

void check_span_value(double dphi) {
  if (!(dphi >= 0.0))
    raise(errc::invalid_argument, "angular span must be nonnegative");
  if (dphi > 2.0 * M_PI * (1.0 + 1e-12))
    raise(errc::span_too_large, "angular span exceeds a full turn");
}

void check_radii(double r_inner, double r_outer) {
  if (!(r_inner >= 0.0) || !std::isfinite(r_outer))
    raise(errc::invalid_argument, "radii must be finite and nonnegative");
  if (r_outer < r_inner)
    raise(errc::region_inverted, "outer radius must not be below inner radius");
}

AreaResult make_result(double value, double oracle) {
  AreaResult r;
  r.value = value;
  r.oracle = oracle;
  double denom = std::fabs(oracle);
  double diff = std::fabs(value - oracle);
  r.rel_residual = denom > 0.0 ? diff / denom : diff;
  return r;
}

// Sums cell areas row-major with one cached node row.
template <typename NodeFn>
double structured_mesh_area(int rows, int cols, NodeFn node) {
  if (rows < 2 || cols < 2)
    raise(errc::invalid_argument, "mesh needs at least 2x2 nodes");
  std::vector<Point3> prev(cols), cur(cols);
  for (int j = 0; j < cols; ++j) prev[j] = node(0, j);
  KahanSum sum;
  for (int i = 1; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) cur[j] = node(i, j);
    for (int j = 0; j + 1 < cols; ++j)
      sum.add(quad_patch_area(prev[j], prev[j + 1], cur[j + 1], cur[j]));
    std::swap(prev, cur);
  }
  return sum.value();
}

template <typename MeshFn>
double refine_mesh(MeshFn mesh, const MeshSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2)
    raise(errc::invalid_argument, "mesh needs at least 2x2 nodes");
  if (!(spec.refine_tol > 0.0))
    raise(errc::invalid_argument, "refine_tol must be positive");
  if (spec.max_refines < 1)
    raise(errc::invalid_argument, "max_refines must be positive");
  double prev = mesh(spec.rows, spec.cols);
  int rows = spec.rows, cols = spec.cols;
  for (int i = 0; i < spec.max_refines; ++i) {
    rows *= 2;
    cols *= 2;
    double cur = mesh(rows, cols);
    if (std::fabs(cur - prev) <= spec.refine_tol * std::fabs(cur)) return cur;
    prev = cur;
  }
  raise(errc::no_convergence, "mesh refinement did not settle");
}

std::vector<double> column_angles(double phi_b, double phi_a, int cols) {
  std::vector<double> th(cols);
  for (int j = 0; j < cols; ++j)
    th[j] = phi_b + (phi_a - phi_b) * j / (cols - 1.0);
  return th;
}

}  // namespace

double quad_patch_area(Point3 p1, Point3 p2, Point3 p3, Point3 p4) {
  return 0.5 * cross(p4 - p3, p2 - p3).norm() +
         0.5 * cross(p4 - p1, p2 - p1).norm();
}

double cylindrical_patch_area(double r, double w_top, double w_bottom,
                              double dphi) {
  if (!(r > 0.0))
    raise(errc::invalid_argument, "cylinder radius must be positive");
  if (w_top < w_bottom)
    raise(errc::region_inverted, "top height must not be below bottom height");
  check_span_value(dphi);
  return (w_top - w_bottom) * r * dphi;
}

double annular_sector_area(double r_outer, double r_inner, double dphi) {
  check_radii(r_inner, r_outer);
  check_span_value(dphi);
  return 0.5 * (r_outer * r_outer - r_inner * r_inner) * dphi;
}

double paraboloid_patch_area_closed(const ParaboloidModel& model,
                                    double r_inner, double r_outer,
                                    double dphi) {
  check_radii(r_inner, r_outer);
  check_span_value(dphi);
  double ff4 = 4.0 * model.f() * model.f();
  auto g = [ff4](double r) { return std::pow(1.0 + r * r / ff4, 1.5); };
  return dphi * (ff4 / 3.0) * (g(r_outer) - g(r_inner));
}

double cylindrical_patch_mesh(double r, double w_top, double w_bottom,
                              double phi_b, double phi_a, int rows, int cols) {
  checked_span(phi_b, phi_a);
  std::vector<double> th = column_angles(phi_b, phi_a, cols);
  std::vector<double> cth(cols), sth(cols);
  for (int j = 0; j < cols; ++j) {
    cth[j] = std::cos(th[j]);
    sth[j] = std::sin(th[j]);
  }
  return structured_mesh_area(rows, cols, [&](int i, int j) {
    double w = w_bottom + (w_top - w_bottom) * i / (rows - 1.0);
    return Point3{r * cth[j], r * sth[j], w};
  });
}

double annular_sector_mesh(double r_outer, double r_inner, double phi_b,
                           double phi_a, int rows, int cols) {
  checked_span(phi_b, phi_a);
  std::vector<double> th = column_angles(phi_b, phi_a, cols);
  std::vector<double> cth(cols), sth(cols);
  for (int j = 0; j < cols; ++j) {
    cth[j] = std::cos(th[j]);
    sth[j] = std::sin(th[j]);
  }
  return structured_mesh_area(rows, cols, [&](int i, int j) {
    double r = r_inner + (r_outer - r_inner) * i / (rows - 1.0);
    return Point3{r * cth[j], r * sth[j], 0.0};
  });
}

double paraboloid_mesh_total(const ParaboloidModel& model, double r_inner,
                             double r_outer, double phi_b, double phi_a,
                             int rows, int cols) {
  checked_span(phi_b, phi_a);
  std::vector<double> th = column_angles(phi_b, phi_a, cols);
  std::vector<double> cth(cols), sth(cols);
  for (int j = 0; j < cols; ++j) {
    cth[j] = std::cos(th[j]);
    sth[j] = std::sin(th[j]);
  }
  double f = model.f();
  return structured_mesh_area(rows, cols, [&](int i, int j) {
    double r = r_inner + (r_outer - r_inner) * i / (rows - 1.0);
    return Point3{r * cth[j], r * sth[j], (r * r - 4.0 * f * f) / (4.0 * f)};
  });
}

AreaResult paraboloid_mesh_area(const ParaboloidModel& model, double r_inner,
                                double r_outer, double phi_b, double phi_a,
                                const MeshSpec& spec) {
  double span = checked_span(phi_b, phi_a);
  check_radii(r_inner, r_outer);
  double value = refine_mesh(
      [&](int rows, int cols) {
        return paraboloid_mesh_total(model, r_inner, r_outer, phi_b, phi_a,
                                     rows, cols);
      },
      spec);
  double oracle = paraboloid_patch_area_closed(model, r_inner, r_outer, span);
  return make_result(value, oracle);
}

AreaResult cylindrical_patch_checked(double r, double w_top, double w_bottom,
                                     double phi_b, double phi_a,
                                     const MeshSpec& spec) {
  double span = checked_span(phi_b, phi_a);
  double value = cylindrical_patch_area(r, w_top, w_bottom, span);
  double oracle = refine_mesh(
      [&](int rows, int cols) {
        return cylindrical_patch_mesh(r, w_top, w_bottom, phi_b, phi_a, rows,
                                      cols);
      },
      spec);
  return make_result(value, oracle);
}

AreaResult annular_sector_checked(double r_outer, double r_inner, double phi_b,
                                  double phi_a, const MeshSpec& spec) {
  double span = checked_span(phi_b, phi_a);
  double value = annular_sector_area(r_outer, r_inner, span);
  double oracle = refine_mesh(
      [&](int rows, int cols) {
        return annular_sector_mesh(r_outer, r_inner, phi_b, phi_a, rows, cols);
      },
      spec);
  return make_result(value, oracle);
}

VerticalRect VerticalRect::from_corners(const ParaboloidModel& model, Point3 a,
                                        Point3 b, Point3 c, Point3 d) {
  double scale = std::max({a.norm(), b.norm(), c.norm(), d.norm()});
  double tol = model.tol_abs() + model.tol_rel() * scale;
  if (std::fabs(a.w - b.w) > tol || std::fabs(c.w - d.w) > tol)
    raise(errc::invalid_argument, "top and bottom edges must be horizontal");
  if ((a.uv() - d.uv()).norm() > tol || (b.uv() - c.uv()).norm() > tol)
    raise(errc::invalid_argument, "side edges must be vertical");
  if (!(a.w - d.w > tol))
    raise(errc::region_inverted,
          "top edge must lie strictly above the bottom edge");
  VerticalRect rect;
  rect.p = 0.5 * (a.uv() + d.uv());
  rect.q = 0.5 * (b.uv() + c.uv());
  rect.w_top = 0.5 * (a.w + b.w);
  rect.w_bottom = 0.5 * (c.w + d.w);
  Point2 dvec = rect.q - rect.p;
  double len2 = dot(dvec, dvec);
  if (std::sqrt(len2) <= tol)
    raise(errc::invalid_argument, "rectangle width must be nonzero");
  double s = std::clamp(-dot(rect.p, dvec) / len2, 0.0, 1.0);
  if ((rect.p + s * dvec).norm() <= tol)
    raise(errc::degenerate_on_axis,
          "rectangle trace passes through the mirror axis");
  return rect;
}

ShadowCircle edge_shadow_circle(const ParaboloidModel& model, Point2 p,
                                Point2 q, double w) {
  FocalPlane plane = model.plane_through_focus({p.u, p.v, w}, {q.u, q.v, w});
  ConicSection sec = classify_section(model, plane);
  if (sec.kind == ConicKind::Circle) return {{0.0, 0.0}, 2.0 * model.f()};
  if (sec.kind == ConicKind::Parabola)
    raise(errc::degenerate_on_axis,
          "edge trace passes through the mirror axis");
  const EllipseData& e = sec.ellipse();
  return {{e.center.u, e.center.v}, e.b};
}

double shadow_radius(const ShadowCircle& c, double theta) {
  Point2 e{std::cos(theta), std::sin(theta)};
  double along = dot(c.center, e);
  double across = cross(c.center, e);
  double disc = c.radius * c.radius - across * across;
  if (disc < 0.0) raise(errc::out_of_range, "ray misses the shadow circle");
  return along + std::sqrt(disc);
}

namespace {

// Shadow boundary of the rectangle's first view: corner images, the two
// bounding circles, and the signed arc spans selected by edge-midpoint
// witnesses.
struct RectShadow {
  ShadowCircle top, bottom;
  Point2 A1, B1, C1, D1;
  double thA = 0.0, dAB = 0.0;
  double thC = 0.0, dCD = 0.0;
};

RectShadow rect_shadow(const ParaboloidModel& model, const VerticalRect& r) {
  RectShadow s;
  s.top = edge_shadow_circle(model, r.p, r.q, r.w_top);
  s.bottom = edge_shadow_circle(model, r.p, r.q, r.w_bottom);
  auto shadow_of = [&](Point3 x) { return central_project(model, x).uv(); };
  s.A1 = shadow_of(r.corner_a());
  s.B1 = shadow_of(r.corner_b());
  s.C1 = shadow_of(r.corner_c());
  s.D1 = shadow_of(r.corner_d());
  Point2 wt = shadow_of(0.5 * (r.corner_a() + r.corner_b()));
  Point2 wb = shadow_of(0.5 * (r.corner_c() + r.corner_d()));
  s.thA = polar_angle(s.A1 - s.top.center);
  double thB = polar_angle(s.B1 - s.top.center);
  s.dAB = signed_interval_through(s.thA, thB, polar_angle(wt - s.top.center));
  s.thC = polar_angle(s.C1 - s.bottom.center);
  double thD = polar_angle(s.D1 - s.bottom.center);
  s.dCD =
      signed_interval_through(s.thC, thD, polar_angle(wb - s.bottom.center));
  return s;
}

// Strip integral of x dy along a straight boundary piece; exact.
double strip_line(Point2 P, Point2 Q) {
  return 0.5 * (P.u + Q.u) * (Q.v - P.v);
}

// Strip integral of x dy along a circular boundary piece, accumulated per
// ordinate-monotone sub-arc (split where the abscissa offset changes sign)
// with the antiderivative of sqrt(R^2 - t^2).
double strip_arc(const ShadowCircle& c, double th_from, double signed_span) {
  if (signed_span == 0.0) return 0.0;
  double R = c.radius;
  double th_to = th_from + signed_span;
  double dir = signed_span > 0.0 ? 1.0 : -1.0;
  auto G = [R](double t) {
    t = std::clamp(t, -R, R);
    return 0.5 * (t * std::sqrt(std::max(0.0, R * R - t * t)) +
                  R * R * std::asin(std::clamp(t / R, -1.0, 1.0)));
  };
  double total = 0.0;
  double cur = th_from;
  while (dir * (th_to - cur) > 0.0) {
    double k = dir > 0.0 ? std::floor((cur - M_PI_2) / M_PI) + 1.0
                         : std::ceil((cur - M_PI_2) / M_PI) - 1.0;
    double next = k * M_PI + M_PI_2;
    if (dir * (next - cur) <= 0.0) next = (k + dir) * M_PI + M_PI_2;
    if (dir * (next - th_to) >= 0.0) next = th_to;
    double branch = std::cos(0.5 * (cur + next)) >= 0.0 ? 1.0 : -1.0;
    double y0 = R * std::sin(cur), y1 = R * std::sin(next);
    total += c.center.u * (y1 - y0) + branch * (G(y1) - G(y0));
    cur = next;
  }
  return total;
}

}  // namespace

AreaResult vertical_rect_projected_area(const ParaboloidModel& model,
                                        const VerticalRect& rect) {
  RectShadow s = rect_shadow(model, rect);
  double strips = strip_line(s.D1, s.A1) + strip_arc(s.top, s.thA, s.dAB) +
                  strip_line(s.B1, s.C1) + strip_arc(s.bottom, s.thC, s.dCD);
  double value = std::fabs(strips);

  QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-14 * model.f() * model.f();
  auto green_line = [&](Point2 P, Point2 Q) {
    auto fn = [&](double t) {
      double x = P.u + t * (Q.u - P.u);
      double y = P.v + t * (Q.v - P.v);
      return 0.5 * (x * (Q.v - P.v) - y * (Q.u - P.u));
    };
    return integrate(fn, 0.0, 1.0, opt);
  };
  auto green_arc = [&](const ShadowCircle& c, double from, double span) {
    if (span == 0.0) return 0.0;
    auto fn = [&](double th) {
      double x = c.center.u + c.radius * std::cos(th);
      double y = c.center.v + c.radius * std::sin(th);
      double xp = -c.radius * std::sin(th);
      double yp = c.radius * std::cos(th);
      return 0.5 * (x * yp - y * xp);
    };
    return integrate(fn, from, from + span, opt);
  };
  double oracle =
      std::fabs(green_line(s.D1, s.A1) + green_arc(s.top, s.thA, s.dAB) +
                green_line(s.B1, s.C1) + green_arc(s.bottom, s.thC, s.dCD));
  return make_result(value, oracle);
}

AreaResult vertical_rect_surface_area(const ParaboloidModel& model,
                                      const VerticalRect& rect,
                                      const MeshSpec& spec,
                                      std::uint64_t mc_samples,
                                      std::uint64_t seed) {
  if (mc_samples < 2)
    raise(errc::invalid_argument, "need at least two Monte-Carlo samples");
  ShadowCircle top = edge_shadow_circle(model, rect.p, rect.q, rect.w_top);
  ShadowCircle bottom =
      edge_shadow_circle(model, rect.p, rect.q, rect.w_bottom);
  double th0 = polar_angle(rect.p);
  double sweep = signed_interval_through(
      th0, polar_angle(rect.q), polar_angle(0.5 * (rect.p + rect.q)));
  double th1 = th0 + sweep;

  auto contains_angle = [&](double th) {
    double delta = wrap_two_pi(th - th0);
    return sweep >= 0.0 ? delta <= sweep : delta - 2.0 * M_PI >= sweep;
  };
  double rho_max = std::max(shadow_radius(top, th0), shadow_radius(top, th1));
  if (top.center.norm() > 0.0 && contains_angle(polar_angle(top.center)))
    rho_max = std::max(rho_max, top.center.norm() + top.radius);
  double rho_min =
      std::min(shadow_radius(bottom, th0), shadow_radius(bottom, th1));
  if (bottom.center.norm() > 0.0 &&
      contains_angle(polar_angle(-1.0 * bottom.center)))
    rho_min = std::min(rho_min, bottom.radius - bottom.center.norm());

  double f = model.f();
  auto node3 = [f](double rho, double cth, double sth) {
    return Point3{rho * cth, rho * sth, (rho * rho - 4.0 * f * f) / (4.0 * f)};
  };
  // Bounding sector of the mirror minus the pieces above the top arc and
  // below the bottom arc, on a shared fan of radial columns.
  auto mesh_value = [&](int rows, int cols) {
    std::vector<double> cth(cols), sth(cols), rt(cols), rb(cols);
    for (int j = 0; j < cols; ++j) {
      double th = th0 + sweep * j / (cols - 1.0);
      cth[j] = std::cos(th);
      sth[j] = std::sin(th);
      rt[j] = shadow_radius(top, th);
      rb[j] = shadow_radius(bottom, th);
    }
    double sector = structured_mesh_area(rows, cols, [&](int i, int j) {
      double rho = rho_min + (rho_max - rho_min) * i / (rows - 1.0);
      return node3(rho, cth[j], sth[j]);
    });
    double above = structured_mesh_area(rows, cols, [&](int i, int j) {
      double rho = rt[j] + (rho_max - rt[j]) * i / (rows - 1.0);
      return node3(rho, cth[j], sth[j]);
    });
    double below = structured_mesh_area(rows, cols, [&](int i, int j) {
      double rho = rho_min + (rb[j] - rho_min) * i / (rows - 1.0);
      return node3(rho, cth[j], sth[j]);
    });
    return sector - above - below;
  };
  double value = refine_mesh(mesh_value, spec);

  // Monte-Carlo oracle: area-uniform samples over the bounding sector,
  // integrating the mirror area element over the region between the arcs.
  std::mt19937_64 rng(seed);
  double r2lo = rho_min * rho_min, r2hi = rho_max * rho_max;
  double measure = 0.5 * (r2hi - r2lo) * std::fabs(sweep);
  KahanSum acc, acc2;
  for (std::uint64_t i = 0; i < mc_samples; ++i) {
    double th = th0 + sweep * uniform01(rng);
    double rho = std::sqrt(r2lo + (r2hi - r2lo) * uniform01(rng));
    double x = 0.0;
    if (rho >= shadow_radius(bottom, th) && rho <= shadow_radius(top, th))
      x = std::sqrt(1.0 + rho * rho / (4.0 * f * f));
    acc.add(x);
    acc2.add(x * x);
  }
  double n = static_cast<double>(mc_samples);
  double mean = acc.value() / n;
  double var = std::max(0.0, acc2.value() / n - mean * mean);
  AreaResult res = make_result(value, measure * mean);
  res.oracle_stderr = measure * std::sqrt(var / n);
  return res;
}

}  // namespace pdproj
