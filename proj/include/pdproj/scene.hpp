#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "pdproj/geometry.hpp"

namespace pdproj {

struct PointEntity {
  std::string id;
  Point3 p;
};

struct SegmentEntity {
  std::string id;
  Point3 a, b;
};

// corners[0..3] = a, b, c, d: a-b is the top edge, d-c the bottom edge,
// a-d and b-c the vertical sides.
struct VerticalRectEntity {
  std::string id;
  std::array<Point3, 4> corners;
};

struct CylindricalPatchEntity {
  std::string id;
  double r = 0.0, w_top = 0.0, w_bottom = 0.0;
  double phi_from = 0.0, phi_to = 0.0;
};

struct AnnularSectorEntity {
  std::string id;
  double r_inner = 0.0, r_outer = 0.0;
  double phi_from = 0.0, phi_to = 0.0;
};

using Entity = std::variant<PointEntity, SegmentEntity, VerticalRectEntity,
                            CylindricalPatchEntity, AnnularSectorEntity>;

const std::string& entity_id(const Entity& e);
const char* entity_type(const Entity& e);

// Angles are stored in radians; documents declaring `angle_unit: degrees`
// are converted on parse.
struct Scene {
  double focal = 1.0;
  double tol_rel = 1e-9;
  double tol_abs = -1.0;
  std::vector<Entity> entities;

  ParaboloidModel model() const {
    return ParaboloidModel(focal, tol_rel, tol_abs);
  }
};

// from_document honours the document's angle_unit (default radians); the
// other values override it.
enum class AngleUnit { from_document, radians, degrees };

Scene parse_scene(const std::string& text,
                  AngleUnit unit = AngleUnit::from_document);
Scene load_scene(const std::string& path,
                 AngleUnit unit = AngleUnit::from_document);
std::string emit_scene(const Scene& scene);

}  // namespace pdproj
