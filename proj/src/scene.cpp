#include "pdproj/scene.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pdproj/errors.hpp"

namespace pdproj {

using nlohmann::ordered_json;

const std::string& entity_id(const Entity& e) {
  return std::visit([](const auto& x) -> const std::string& { return x.id; },
                    e);
}

const char* entity_type(const Entity& e) {
  struct Visitor {
    const char* operator()(const PointEntity&) { return "point"; }
    const char* operator()(const SegmentEntity&) { return "segment"; }
    const char* operator()(const VerticalRectEntity&) {
      return "vertical_rect";
    }
    const char* operator()(const CylindricalPatchEntity&) {
      return "cylindrical_patch";
    }
    const char* operator()(const AnnularSectorEntity&) {
      return "annular_sector";
    }
  };
  return std::visit(Visitor{}, e);
}

namespace {

[[noreturn]] void invalid(const std::string& id, const std::string& what) {
  raise(errc::validation_error, "entity '" + id + "': " + what);
}

void require_keys(const ordered_json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object())
    raise(errc::validation_error, where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      raise(errc::validation_error,
            where + ": unknown field '" + it.key() + "'");
}

double number_field(const ordered_json& obj, const std::string& where,
                    const std::string& key) {
  if (!obj.contains(key))
    raise(errc::validation_error, where + ": missing field '" + key + "'");
  const ordered_json& v = obj.at(key);
  if (!v.is_number())
    raise(errc::validation_error, where + ": field '" + key +
                                      "' must be a number");
  double x = v.get<double>();
  if (!std::isfinite(x))
    raise(errc::validation_error, where + ": field '" + key +
                                      "' must be finite");
  return x;
}

Point3 point_value(const ordered_json& v, const std::string& where,
                   const std::string& key) {
  if (!v.is_array() || v.size() != 3)
    raise(errc::validation_error,
          where + ": field '" + key + "' must be an array of 3 numbers");
  Point3 p;
  double* comps[3] = {&p.u, &p.v, &p.w};
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number())
      raise(errc::validation_error,
            where + ": field '" + key + "' must contain only numbers");
    *comps[i] = v[i].get<double>();
    if (!std::isfinite(*comps[i]))
      raise(errc::validation_error,
            where + ": field '" + key + "' must be finite");
  }
  return p;
}

Point3 point_field(const ordered_json& obj, const std::string& where,
                   const std::string& key) {
  if (!obj.contains(key))
    raise(errc::validation_error, where + ": missing field '" + key + "'");
  return point_value(obj.at(key), where, key);
}

Entity parse_entity(const ordered_json& obj, bool degrees) {
  if (!obj.is_object())
    raise(errc::validation_error, "entities must be objects");
  if (!obj.contains("type") || !obj.at("type").is_string())
    raise(errc::validation_error, "entity missing string field 'type'");
  if (!obj.contains("id") || !obj.at("id").is_string())
    raise(errc::validation_error, "entity missing string field 'id'");
  std::string type = obj.at("type").get<std::string>();
  std::string id = obj.at("id").get<std::string>();
  if (id.empty()) raise(errc::validation_error, "entity id must be nonempty");
  std::string where = "entity '" + id + "'";
  double to_rad = degrees ? M_PI / 180.0 : 1.0;

  if (type == "point") {
    require_keys(obj, where, {"type", "id", "u", "v", "w"});
    PointEntity e;
    e.id = id;
    e.p = {number_field(obj, where, "u"), number_field(obj, where, "v"),
           number_field(obj, where, "w")};
    return e;
  }
  if (type == "segment") {
    require_keys(obj, where, {"type", "id", "a", "b"});
    SegmentEntity e;
    e.id = id;
    e.a = point_field(obj, where, "a");
    e.b = point_field(obj, where, "b");
    return e;
  }
  if (type == "vertical_rect") {
    require_keys(obj, where, {"type", "id", "corners"});
    if (!obj.contains("corners") || !obj.at("corners").is_array() ||
        obj.at("corners").size() != 4)
      invalid(id, "field 'corners' must be an array of 4 points");
    VerticalRectEntity e;
    e.id = id;
    for (int i = 0; i < 4; ++i)
      e.corners[i] = point_value(obj.at("corners")[i], where, "corners");
    return e;
  }
  if (type == "cylindrical_patch") {
    require_keys(obj, where,
                 {"type", "id", "r", "w_top", "w_bottom", "phi_from",
                  "phi_to"});
    CylindricalPatchEntity e;
    e.id = id;
    e.r = number_field(obj, where, "r");
    e.w_top = number_field(obj, where, "w_top");
    e.w_bottom = number_field(obj, where, "w_bottom");
    e.phi_from = to_rad * number_field(obj, where, "phi_from");
    e.phi_to = to_rad * number_field(obj, where, "phi_to");
    if (!(e.r > 0.0)) invalid(id, "r must be positive");
    if (e.w_top < e.w_bottom) invalid(id, "w_top must be >= w_bottom");
    if (e.phi_to < e.phi_from) invalid(id, "phi_to must be >= phi_from");
    if (e.phi_to - e.phi_from > 2.0 * M_PI * (1.0 + 1e-12))
      invalid(id, "angular span exceeds a full turn");
    return e;
  }
  if (type == "annular_sector") {
    require_keys(obj, where,
                 {"type", "id", "r_inner", "r_outer", "phi_from", "phi_to"});
    AnnularSectorEntity e;
    e.id = id;
    e.r_inner = number_field(obj, where, "r_inner");
    e.r_outer = number_field(obj, where, "r_outer");
    e.phi_from = to_rad * number_field(obj, where, "phi_from");
    e.phi_to = to_rad * number_field(obj, where, "phi_to");
    if (!(e.r_inner >= 0.0)) invalid(id, "r_inner must be nonnegative");
    if (e.r_outer < e.r_inner) invalid(id, "r_outer must be >= r_inner");
    if (e.phi_to < e.phi_from) invalid(id, "phi_to must be >= phi_from");
    if (e.phi_to - e.phi_from > 2.0 * M_PI * (1.0 + 1e-12))
      invalid(id, "angular span exceeds a full turn");
    return e;
  }
  raise(errc::validation_error, where + ": unknown type '" + type + "'");
}

ordered_json point_json(Point3 p) {
  return ordered_json::array({p.u, p.v, p.w});
}

}  // namespace

Scene parse_scene(const std::string& text, AngleUnit unit) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    raise(errc::parse_error, e.what());  // includes number overflow (406)
  }
  if (!doc.is_object())
    raise(errc::validation_error, "scene document must be an object");
  require_keys(doc, "scene", {"focal", "entities", "angle_unit"});
  if (!doc.contains("focal"))
    raise(errc::validation_error, "scene missing 'focal' block");
  const ordered_json& focal = doc.at("focal");
  require_keys(focal, "focal", {"f", "tolerances"});
  Scene scene;
  scene.focal = number_field(focal, "focal", "f");
  if (!(scene.focal > 0.0))
    raise(errc::validation_error, "focal: f must be positive");
  if (focal.contains("tolerances")) {
    const ordered_json& tol = focal.at("tolerances");
    require_keys(tol, "tolerances", {"rel", "abs"});
    if (tol.contains("rel")) scene.tol_rel = number_field(tol, "tolerances", "rel");
    if (tol.contains("abs")) scene.tol_abs = number_field(tol, "tolerances", "abs");
  }
  bool degrees = false;
  if (doc.contains("angle_unit")) {
    if (!doc.at("angle_unit").is_string())
      raise(errc::validation_error, "angle_unit must be a string");
    std::string declared = doc.at("angle_unit").get<std::string>();
    if (declared == "degrees")
      degrees = true;
    else if (declared != "radians")
      raise(errc::validation_error, "angle_unit must be radians or degrees");
  }
  if (unit != AngleUnit::from_document) degrees = unit == AngleUnit::degrees;
  scene.model();  // validates focal length and tolerance ranges

  if (!doc.contains("entities") || !doc.at("entities").is_array())
    raise(errc::validation_error, "scene missing 'entities' array");
  std::set<std::string> ids;
  for (const ordered_json& obj : doc.at("entities")) {
    Entity e = parse_entity(obj, degrees);
    if (!ids.insert(entity_id(e)).second)
      raise(errc::validation_error,
            "duplicate entity id '" + entity_id(e) + "'");
    scene.entities.push_back(std::move(e));
  }
  return scene;
}

Scene load_scene(const std::string& path, AngleUnit unit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::parse_error, "cannot open scene file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str(), unit);
}

std::string emit_scene(const Scene& scene) {
  ordered_json doc;
  doc["focal"]["f"] = scene.focal;
  doc["focal"]["tolerances"]["rel"] = scene.tol_rel;
  doc["focal"]["tolerances"]["abs"] = scene.tol_abs;
  doc["entities"] = ordered_json::array();
  for (const Entity& ent : scene.entities) {
    ordered_json obj;
    obj["type"] = entity_type(ent);
    obj["id"] = entity_id(ent);
    if (const auto* p = std::get_if<PointEntity>(&ent)) {
      obj["u"] = p->p.u;
      obj["v"] = p->p.v;
      obj["w"] = p->p.w;
    } else if (const auto* s = std::get_if<SegmentEntity>(&ent)) {
      obj["a"] = point_json(s->a);
      obj["b"] = point_json(s->b);
    } else if (const auto* r = std::get_if<VerticalRectEntity>(&ent)) {
      obj["corners"] = ordered_json::array();
      for (const Point3& c : r->corners) obj["corners"].push_back(point_json(c));
    } else if (const auto* c = std::get_if<CylindricalPatchEntity>(&ent)) {
      obj["r"] = c->r;
      obj["w_top"] = c->w_top;
      obj["w_bottom"] = c->w_bottom;
      obj["phi_from"] = c->phi_from;
      obj["phi_to"] = c->phi_to;
    } else if (const auto* a = std::get_if<AnnularSectorEntity>(&ent)) {
      obj["r_inner"] = a->r_inner;
      obj["r_outer"] = a->r_outer;
      obj["phi_from"] = a->phi_from;
      obj["phi_to"] = a->phi_to;
    }
    doc["entities"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

}  // namespace pdproj
