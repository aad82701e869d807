#pragma once

#include <cstdint>

#include "pdproj/conics.hpp"
#include "pdproj/projection.hpp"

namespace pdproj {

// Starting resolution (node counts) of a structured surface mesh and the stop
// rule for its refinement: node counts double until two successive totals
// agree to refine_tol relatively, up to max_refines doublings.
struct MeshSpec {
  int rows = 64;  // radial (or height) node count, >= 2
  int cols = 64;  // angular node count, >= 2
  double refine_tol = 1e-4;
  int max_refines = 6;
};

// An area measured two ways. `oracle_stderr` is nonzero only when the oracle
// is a Monte-Carlo estimate.
struct AreaResult {
  double value = 0.0;   // closed form or converged mesh, per operation
  double oracle = 0.0;
  double rel_residual = 0.0;
  double oracle_stderr = 0.0;
};

// Area of the (possibly non-planar) quadrilateral p1 p2 p3 p4 taken in cyclic
// order, as the two triangles split along the p2-p4 diagonal.
double quad_patch_area(Point3 p1, Point3 p2, Point3 p3, Point3 p4);

// Closed forms (angles in radians).
double cylindrical_patch_area(double r, double w_top, double w_bottom,
                              double dphi);
double annular_sector_area(double r_outer, double r_inner, double dphi);
// Mirror surface between axis distances r_inner..r_outer over an angular
// span: dphi * (4 f^2 / 3) * [(1 + r^2/(4 f^2))^(3/2)] between the radii.
double paraboloid_patch_area_closed(const ParaboloidModel& model,
                                    double r_inner, double r_outer,
                                    double dphi);

// Triangulated totals at a fixed resolution (exposed for convergence
// studies; the *_checked and mesh operations below refine them).
double cylindrical_patch_mesh(double r, double w_top, double w_bottom,
                              double phi_b, double phi_a, int rows, int cols);
double annular_sector_mesh(double r_outer, double r_inner, double phi_b,
                           double phi_a, int rows, int cols);
double paraboloid_mesh_total(const ParaboloidModel& model, double r_inner,
                             double r_outer, double phi_b, double phi_a,
                             int rows, int cols);

// Mirror patch area by mesh refinement; the closed form is the oracle.
AreaResult paraboloid_mesh_area(const ParaboloidModel& model, double r_inner,
                                double r_outer, double phi_b, double phi_a,
                                const MeshSpec& spec = {});

// Closed forms validated against their own refined meshes (used by scene
// validation, where every analytic value needs an independent number).
AreaResult cylindrical_patch_checked(double r, double w_top, double w_bottom,
                                     double phi_b, double phi_a,
                                     const MeshSpec& spec = {});
AreaResult annular_sector_checked(double r_outer, double r_inner, double phi_b,
                                  double phi_a, const MeshSpec& spec = {});

// A rectangle standing on vertical edges: horizontal trace from p to q, top
// edge at w_top, bottom at w_bottom. Its first view is a mirror region whose
// shadow is bounded by two circular arcs and two radial segments.
struct VerticalRect {
  Point2 p;
  Point2 q;
  double w_bottom = 0.0;
  double w_top = 0.0;

  Point3 corner_a() const { return {p.u, p.v, w_top}; }  // above d
  Point3 corner_b() const { return {q.u, q.v, w_top}; }  // above c
  Point3 corner_c() const { return {q.u, q.v, w_bottom}; }
  Point3 corner_d() const { return {p.u, p.v, w_bottom}; }

  // Validates that a-b is the top edge, d-c the bottom, a-d and b-c vertical,
  // the top strictly above the bottom, the width nonzero, and the horizontal
  // trace clear of the axis.
  static VerticalRect from_corners(const ParaboloidModel& model, Point3 a,
                                   Point3 b, Point3 c, Point3 d);
};

// Shadow of the first view of a horizontal segment's section: a circle on
// the focal plane that always encloses the origin.
struct ShadowCircle {
  Point2 center;
  double radius = 0.0;
};

ShadowCircle edge_shadow_circle(const ParaboloidModel& model, Point2 p,
                                Point2 q, double w);

// Distance from the origin to the circle along the ray at angle theta (the
// far intersection; single-valued because the origin is interior).
double shadow_radius(const ShadowCircle& c, double theta);

// Area of the shadow of the rectangle's first view: boundary strip integrals
// against a quadrature of the same boundary circulation.
AreaResult vertical_rect_projected_area(const ParaboloidModel& model,
                                        const VerticalRect& rect);

// Area of the rectangle's first view on the mirror itself: triangulated
// bounding sector minus the pieces above and below the two arc boundaries,
// against a Monte-Carlo integration of the mirror area element.
AreaResult vertical_rect_surface_area(const ParaboloidModel& model,
                                      const VerticalRect& rect,
                                      const MeshSpec& spec = {},
                                      std::uint64_t mc_samples = 10000000,
                                      std::uint64_t seed = 1);

}  // namespace pdproj
