#include "pdproj/arc_length.hpp"

#include <algorithm>
#include <cmath>

#include "pdproj/numeric.hpp"

namespace pdproj {

double space_length(Point3 a, Point3 b) { return (b - a).norm(); }

double ortho_length(Point2 a, Point2 b) { return (b - a).norm(); }

double circle_arc_length(const ParaboloidModel& model, double phi_a,
                         double phi_b, bool major_arc) {
  double d = wrap_two_pi(phi_b - phi_a);
  double minor = std::min(d, 2.0 * M_PI - d);
  return 2.0 * model.f() * (major_arc ? 2.0 * M_PI - minor : minor);
}

namespace {

// chord * span / (2 sin(span/2)) with its small-span series.
double span_factor_times(double chord, double span) {
  if (span >= 2.0 * M_PI)
    raise(errc::span_too_large, "span must be below a full turn");
  if (span < 1e-4) return chord * (1.0 + span * span / 24.0);
  return chord * span / (2.0 * std::sin(0.5 * span));
}

}  // namespace

double elliptic_arc_approx(double a, double b, double t1, double t2) {
  if (!(a >= b) || !(b > 0.0))
    raise(errc::invalid_argument, "semi-axes must satisfy a >= b > 0");
  double span = std::fabs(t2 - t1);
  double chord = std::hypot(a * (std::cos(t2) - std::cos(t1)),
                            b * (std::sin(t2) - std::sin(t1)));
  return span_factor_times(chord, span);
}

double elliptic_arc_composite(double a, double b, double t1, double t2,
                              int subdivisions) {
  if (subdivisions < 1)
    raise(errc::invalid_argument, "subdivision count must be positive");
  if (std::fabs(t2 - t1) >= 2.0 * M_PI)
    raise(errc::span_too_large, "span must be below a full turn");
  double dt = (t2 - t1) / subdivisions;
  KahanSum sum;
  for (int i = 0; i < subdivisions; ++i)
    sum.add(elliptic_arc_approx(a, b, t1 + i * dt, t1 + (i + 1) * dt));
  return sum.value();
}

double circular_arc_by_abscissa(double center_u, double r, double u1,
                                double u2) {
  if (!(r > 0.0)) raise(errc::invalid_argument, "radius must be positive");
  auto reduced = [&](double u) {
    double x = (u - center_u) / r;
    if (std::fabs(x) > 1.0 + 1e-9)
      raise(errc::out_of_range, "abscissa lies outside the circle's extent");
    return std::clamp(x, -1.0, 1.0);
  };
  return r * std::fabs(std::asin(reduced(u2)) - std::asin(reduced(u1)));
}

double circular_arc_by_abscissa(Point2 center, double r, double th_from,
                                double signed_span) {
  (void)center;  // lengths are translation-invariant
  if (!(r > 0.0)) raise(errc::invalid_argument, "radius must be positive");
  if (std::fabs(signed_span) > 2.0 * M_PI * (1.0 + 1e-12))
    raise(errc::span_too_large, "span must not exceed a full turn");
  double th_to = th_from + signed_span;
  double dir = signed_span >= 0.0 ? 1.0 : -1.0;
  KahanSum sum;
  double cur = th_from;
  while (dir * (th_to - cur) > 0.0) {
    // next ordinate sign change at a multiple of pi, strictly ahead of cur
    double k = dir > 0.0 ? std::floor(cur / M_PI) + 1.0
                         : std::ceil(cur / M_PI) - 1.0;
    double next = k * M_PI;
    if (dir * (next - cur) <= 0.0) next = (k + dir) * M_PI;
    if (dir * (next - th_to) >= 0.0) next = th_to;
    // Measure the piece in the circle's own frame: translating the abscissas
    // by the center would round the extremal values r*(+-1) away from the
    // circle's edge, and asin amplifies that rounding to ~1e-8.
    sum.add(circular_arc_by_abscissa(0.0, r, r * std::cos(cur),
                                     r * std::cos(next)));
    cur = next;
  }
  return sum.value();
}

double parabola_arc_primitive(const ParaboloidModel& model, double x) {
  double f = model.f();
  return f * std::asinh(x / (2.0 * f)) +
         x * std::sqrt(x * x + 4.0 * f * f) / (4.0 * f);
}

double parabola_arc_length(const ParaboloidModel& model, double x_a,
                           double x_b) {
  return std::fabs(parabola_arc_primitive(model, x_a) -
                   parabola_arc_primitive(model, x_b));
}

double parabola_chord_proj(double x_a, double x_b) {
  return std::fabs(x_a - x_b);
}

namespace {

QuadratureOptions arc_quad_opts(const ParaboloidModel& model) {
  QuadratureOptions opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-12 * model.f();
  opt.max_depth = 40;
  return opt;
}

double relative_residual(double analytic, double oracle, double tol_abs) {
  return std::fabs(analytic - oracle) / std::max(oracle, tol_abs);
}

Path3 drop_w(const Path3& path) {
  Path3 out;
  out.point = [pt = path.point](double t) {
    Point3 p = pt(t);
    return Point3{p.u, p.v, 0.0};
  };
  out.derivative = [d = path.derivative](double t) {
    Point3 p = d(t);
    return Point3{p.u, p.v, 0.0};
  };
  return out;
}

void fill_residuals(const ParaboloidModel& model, ArcResult& arc) {
  arc.rel_residual =
      relative_residual(arc.analytic, arc.oracle, model.tol_abs());
  if (arc.refined)
    arc.refined_residual =
        relative_residual(*arc.refined, arc.oracle, model.tol_abs());
}

void circle_view_arcs(const ParaboloidModel& model, Point3 A, Point3 B,
                      Point3 W, ArcResult& arc3, ArcResult& arc2) {
  double th_a = polar_angle(A), th_b = polar_angle(B), th_w = polar_angle(W);
  double span = signed_interval_through(th_a, th_b, th_w);
  Path3 path = circle_section_path(model);
  QuadratureOptions opt = arc_quad_opts(model);
  arc3.analytic =
      circle_arc_length(model, th_a, th_b, std::fabs(span) > M_PI);
  arc3.oracle = path_length(path, th_a, th_a + span, opt);
  arc2.analytic = arc3.analytic;  // the focal circle is its own shadow
  arc2.oracle = path_length(drop_w(path), th_a, th_a + span, opt);
  fill_residuals(model, arc3);
  fill_residuals(model, arc2);
}

void ellipse_view_arcs(const ParaboloidModel& model, const ConicSection& sec,
                       Point3 A, Point3 B, Point3 W, ArcResult& arc3,
                       ArcResult& arc2) {
  const EllipseData& e = sec.ellipse();
  auto local = [&](Point3 p) {
    return to_local(sec, p, model.tol_abs() + model.tol_rel() * p.norm());
  };
  double t_a = local(A).t, t_b = local(B).t, t_w = local(W).t;
  double span = signed_interval_through(t_a, t_b, t_w);
  Path3 path = ellipse_section_path(e);
  QuadratureOptions opt = arc_quad_opts(model);

  arc3.analytic = elliptic_arc_approx(e.a, e.b, t_a, t_a + span);
  arc3.refined = elliptic_arc_composite(e.a, e.b, t_a, t_a + span);
  arc3.oracle = path_length(path, t_a, t_a + span, opt);
  fill_residuals(model, arc3);

  // The shadow of the section is a circle of radius b about the shadow of
  // its center; measure the image arc there by the abscissa form, and let
  // the oracle integrate the shadow path in the section parameter instead.
  Point2 c{e.center.u, e.center.v};
  double th_a = polar_angle(A.uv() - c);
  double th_b = polar_angle(B.uv() - c);
  double th_w = polar_angle(W.uv() - c);
  double span2 = signed_interval_through(th_a, th_b, th_w);
  arc2.analytic = circular_arc_by_abscissa(c, e.b, th_a, span2);
  arc2.oracle = path_length(drop_w(path), t_a, t_a + span, opt);
  fill_residuals(model, arc2);
}

void parabola_view_arcs(const ParaboloidModel& model, const ConicSection& sec,
                        Point3 A, Point3 B, Point3 src_a, Point3 src_b,
                        ArcResult& arc3, ArcResult& arc2) {
  const ParabolaData& par = sec.parabola();
  Point3 sa = rotate_about_w(src_a, par.phi);
  Point3 sb = rotate_about_w(src_b, par.phi);
  if ((sa.u > 0.0) != (sb.u > 0.0)) {
    // The source segment crosses the mirror axis; the view stays bounded only
    // when the crossing sits below the focal plane (its image is the vertex).
    double s = sa.u / (sa.u - sb.u);
    double w_c = sa.w + s * (sb.w - sa.w);
    if (w_c > 0.0)
      raise(errc::degenerate_on_axis,
            "segment crosses the mirror axis above the focal plane; its view "
            "is unbounded");
  }
  auto tol = [&](Point3 p) {
    return model.tol_abs() + model.tol_rel() * p.norm();
  };
  double xa = parabola_abscissa(sec, A, tol(A));
  double xb = parabola_abscissa(sec, B, tol(B));
  Path3 path = parabola_section_path(model, par);
  QuadratureOptions opt = arc_quad_opts(model);
  arc3.analytic = parabola_arc_length(model, xa, xb);
  arc3.oracle = path_length(path, xa, xb, opt);
  arc2.analytic = parabola_chord_proj(xa, xb);
  arc2.oracle = path_length(drop_w(path), xa, xb, opt);
  fill_residuals(model, arc3);
  fill_residuals(model, arc2);
}

void view_arcs(const ParaboloidModel& model, const ConicSection& sec, Point3 A,
               Point3 B, Point3 src_a, Point3 src_b, ArcResult& arc3,
               ArcResult& arc2) {
  if (sec.kind == ConicKind::Parabola) {
    parabola_view_arcs(model, sec, A, B, src_a, src_b, arc3, arc2);
    return;
  }
  // A witness inside the arc selects which way around the section the image
  // runs. Circular and elliptic sections come from planes clear of the axis,
  // so the source midpoint always projects.
  Point3 W = central_project(model, 0.5 * (src_a + src_b));
  if (sec.kind == ConicKind::Circle)
    circle_view_arcs(model, A, B, W, arc3, arc2);
  else
    ellipse_view_arcs(model, sec, A, B, W, arc3, arc2);
}

}  // namespace

LineImageLengths line_image_lengths(const ParaboloidModel& model, Point3 a,
                                    Point3 b) {
  LineImageLengths out;
  out.l = space_length(a, b);
  out.l_prime = ortho_length(ortho_to_director(model, a),
                             ortho_to_director(model, b));
  if (out.l <=
      model.tol_abs() + model.tol_rel() * std::max(a.norm(), b.norm()))
    return out;  // coincident endpoints: every image length is zero

  FocalPlane plane1 = model.plane_through_focus(a, b);
  ConicSection sec1 = classify_section(model, plane1);
  out.kind1 = sec1.kind;
  Point3 A1 = central_project(model, a);
  Point3 B1 = central_project(model, b);
  view_arcs(model, sec1, A1, B1, a, b, out.l1, out.l1_prime);

  if (out.l_prime <= model.tol_abs() + model.tol_rel() * out.l)
    return out;  // vertical segment: the second view is a single point

  Point3 a2 = lift_from_director(model, ortho_to_director(model, a));
  Point3 b2 = lift_from_director(model, ortho_to_director(model, b));
  FocalPlane plane2 = model.plane_through_focus(a2, b2);
  ConicSection sec2 = classify_section(model, plane2);
  out.kind2 = sec2.kind;
  Point3 A2 = central_project(model, a2);
  Point3 B2 = central_project(model, b2);
  view_arcs(model, sec2, A2, B2, a2, b2, out.l2, out.l2_prime);
  return out;
}

}  // namespace pdproj
