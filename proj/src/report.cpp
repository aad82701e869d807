#include "pdproj/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "pdproj/arc_length.hpp"
#include "pdproj/conics.hpp"
#include "pdproj/projection.hpp"

namespace pdproj {

using nlohmann::ordered_json;

const char* command_name(Command cmd) {
  switch (cmd) {
    case Command::project: return "project";
    case Command::classify: return "classify";
    case Command::length: return "length";
    case Command::area: return "area";
    case Command::validate: return "validate";
  }
  return "?";
}

std::string format_double(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

ordered_json json_point(Point3 p) {
  return ordered_json::array({p.u, p.v, p.w});
}
ordered_json json_point(Point2 p) { return ordered_json::array({p.u, p.v}); }

ordered_json json_arc(const ArcResult& r) {
  ordered_json j;
  j["analytic"] = r.analytic;
  j["oracle"] = r.oracle;
  j["rel_residual"] = r.rel_residual;
  if (r.refined) j["refined"] = *r.refined;
  if (r.refined_residual) j["refined_residual"] = *r.refined_residual;
  return j;
}

ordered_json json_area(const AreaResult& r) {
  ordered_json j;
  j["value"] = r.value;
  j["oracle"] = r.oracle;
  j["rel_residual"] = r.rel_residual;
  if (r.oracle_stderr > 0.0) j["oracle_stderr"] = r.oracle_stderr;
  return j;
}

ordered_json json_section(const ConicSection& sec) {
  ordered_json j;
  j["kind"] = conic_kind_name(sec.kind);
  j["plane"] = {{"l", sec.plane.l}, {"m", sec.plane.m}, {"n", sec.plane.n}};
  switch (sec.kind) {
    case ConicKind::Circle:
      j["radius"] = sec.circle().radius;
      break;
    case ConicKind::Ellipse: {
      const EllipseData& e = sec.ellipse();
      j["center"] = json_point(e.center);
      j["semi_major"] = e.a;
      j["semi_minor"] = e.b;
      j["major_dir"] = json_point(e.j_dir);
      j["minor_dir"] = json_point(e.k_dir);
      j["phi_oe"] = e.phi_oe;
      break;
    }
    case ConicKind::Parabola:
      j["phi"] = sec.parabola().phi;
      break;
  }
  return j;
}

bool is_degeneracy(errc code) {
  return code == errc::degenerate_origin || code == errc::degenerate_on_axis ||
         code == errc::degenerate_line_through_focus;
}

struct Check {
  const char* name;
  double value;
  double bound;
};

class ReportBuilder {
 public:
  ReportBuilder(const Scene& scene, Command cmd, const RunOptions& opt)
      : scene_(scene), model_(scene.model()), cmd_(cmd), opt_(opt) {}

  ReportOutcome run() {
    ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = command_name(cmd_);
    doc["focal"] = model_.f();
    doc["tolerances"] = {{"rel", model_.tol_rel()}, {"abs", model_.tol_abs()}};
    doc["mesh"] = {{"rows", opt_.mesh.rows},
                   {"cols", opt_.mesh.cols},
                   {"refine_tol", opt_.mesh.refine_tol},
                   {"max_refines", opt_.mesh.max_refines}};
    doc["monte_carlo"] = {{"samples", opt_.mc_samples}, {"seed", opt_.seed}};
    doc["entities"] = ordered_json::array();
    for (const Entity& ent : scene_.entities)
      doc["entities"].push_back(entity_report(ent));
    doc["summary"] = {{"entities", scene_.entities.size()},
                      {"ok", n_ok_},
                      {"skipped", n_skipped_},
                      {"degenerate", n_degenerate_},
                      {"invalid", n_invalid_},
                      {"checks", n_checks_},
                      {"failures", n_failures_}};
    return {std::move(doc), n_failures_ == 0};
  }

 private:
  ordered_json entity_report(const Entity& ent) {
    ordered_json j;
    j["id"] = entity_id(ent);
    j["type"] = entity_type(ent);
    try {
      ordered_json body = std::visit(
          [&](const auto& e) { return compute(e); }, ent);
      if (body.is_null()) {
        j["status"] = "skipped";
        ++n_skipped_;
      } else if (cmd_ == Command::validate) {
        bool all_pass = true;
        for (const ordered_json& c : body)
          if (!c.at("pass").get<bool>()) all_pass = false;
        j["status"] = all_pass ? "ok" : "failed";
        j["checks"] = std::move(body);
        if (all_pass) ++n_ok_;
      } else {
        j["status"] = "ok";
        j["results"] = std::move(body);
        ++n_ok_;
      }
    } catch (const Error& err) {
      bool degen = is_degeneracy(err.code());
      j["status"] = degen ? "degenerate" : "invalid";
      j["diagnostic"] = {{"code", errc_name(err.code())},
                         {"message", err.what()}};
      (degen ? n_degenerate_ : n_invalid_) += 1;
    }
    return j;
  }

  ordered_json checks_json(const std::vector<Check>& checks) {
    ordered_json arr = ordered_json::array();
    for (const Check& c : checks) {
      bool pass = c.value <= c.bound;
      arr.push_back({{"name", c.name},
                     {"value", c.value},
                     {"bound", c.bound},
                     {"pass", pass}});
      ++n_checks_;
      if (!pass) ++n_failures_;
    }
    return arr;
  }

  // --- points ---

  ordered_json compute(const PointEntity& e) {
    if (cmd_ == Command::classify || cmd_ == Command::length ||
        cmd_ == Command::area)
      return nullptr;
    ProjectionBundle b = double_project(model_, e.p);
    if (cmd_ == Command::project) {
      ordered_json j;
      j["a1"] = json_point(b.a1);
      j["a_prime"] = json_point(b.a_prime);
      j["a1_prime"] = json_point(b.a1_prime);
      j["a2"] = json_point(b.a2);
      j["a2_prime"] = json_point(b.a2_prime);
      j["r_a"] = b.r_a;
      return j;
    }
    auto surface_check = [&](Point3 p) {
      double scale = p.u * p.u + p.v * p.v + 4.0 * model_.f() * model_.f();
      return std::fabs(model_.surface_residual(p)) / scale;
    };
    auto ray_check = [&](Point3 image, Point3 source) {
      if (dot(image, source) <= 0.0) return 1.0;
      return cross(image, source).norm() / (image.norm() * source.norm());
    };
    Point3 lifted = lift_from_director(model_, b.a_prime);
    std::vector<Check> checks{
        {"first_view_on_surface", surface_check(b.a1), 1e-9},
        {"first_view_on_ray", ray_check(b.a1, e.p), 1e-9},
        {"second_view_on_surface", surface_check(b.a2), 1e-9},
        {"second_view_on_ray", ray_check(b.a2, lifted), 1e-9},
    };
    return checks_json(checks);
  }

  // --- segments ---

  ordered_json compute(const SegmentEntity& e) {
    if (cmd_ == Command::project || cmd_ == Command::area) return nullptr;
    if (cmd_ == Command::classify) {
      FocalPlane plane = model_.plane_through_focus(e.a, e.b);
      return json_section(classify_section(model_, plane));
    }
    LineImageLengths lens = line_image_lengths(model_, e.a, e.b);
    if (cmd_ == Command::length) {
      ordered_json j;
      j["l"] = lens.l;
      j["l_prime"] = lens.l_prime;
      if (lens.kind1) {
        j["kind1"] = conic_kind_name(*lens.kind1);
        j["l1"] = json_arc(lens.l1);
        j["l1_prime"] = json_arc(lens.l1_prime);
      }
      if (lens.kind2) {
        j["kind2"] = conic_kind_name(*lens.kind2);
        j["l2"] = json_arc(lens.l2);
        j["l2_prime"] = json_arc(lens.l2_prime);
      }
      return j;
    }
    std::vector<Check> checks;
    auto add_view = [&](ConicKind kind, const ArcResult& arc,
                        const ArcResult& shadow, const char* arc_name,
                        const char* composite_name, const char* shadow_name) {
      if (kind == ConicKind::Ellipse) {
        checks.push_back({arc_name, arc.rel_residual, 0.1});
        checks.push_back(
            {composite_name, arc.refined_residual.value_or(1.0), 1e-4});
      } else {
        checks.push_back({arc_name, arc.rel_residual, 1e-9});
      }
      checks.push_back({shadow_name, shadow.rel_residual, 1e-9});
    };
    if (lens.kind1)
      add_view(*lens.kind1, lens.l1, lens.l1_prime, "first_arc",
               "first_arc_composite", "first_shadow");
    if (lens.kind2)
      add_view(*lens.kind2, lens.l2, lens.l2_prime, "second_arc",
               "second_arc_composite", "second_shadow");
    return checks_json(checks);
  }

  // --- vertical rectangles ---

  ordered_json compute(const VerticalRectEntity& e) {
    if (cmd_ != Command::area && cmd_ != Command::validate) return nullptr;
    VerticalRect rect = VerticalRect::from_corners(
        model_, e.corners[0], e.corners[1], e.corners[2], e.corners[3]);
    AreaResult proj = vertical_rect_projected_area(model_, rect);
    AreaResult surf = vertical_rect_surface_area(model_, rect, opt_.mesh,
                                                 opt_.mc_samples, opt_.seed);
    if (cmd_ == Command::area) {
      ordered_json j;
      j["projected"] = json_area(proj);
      j["surface"] = json_area(surf);
      return j;
    }
    double mc_gap = std::fabs(surf.value - surf.oracle);
    double mc_bound = std::max(3.0 * surf.oracle_stderr,
                               1e-3 * std::fabs(surf.value));
    std::vector<Check> checks{
        {"projected_area", proj.rel_residual, 1e-6},
        {"surface_area_mc_gap", mc_gap, mc_bound},
    };
    return checks_json(checks);
  }

  // --- surface patches ---

  ordered_json compute(const CylindricalPatchEntity& e) {
    if (cmd_ != Command::area && cmd_ != Command::validate) return nullptr;
    AreaResult r = cylindrical_patch_checked(e.r, e.w_top, e.w_bottom,
                                             e.phi_from, e.phi_to, opt_.mesh);
    return patch_body(r);
  }

  ordered_json compute(const AnnularSectorEntity& e) {
    if (cmd_ != Command::area && cmd_ != Command::validate) return nullptr;
    AreaResult r = annular_sector_checked(e.r_outer, e.r_inner, e.phi_from,
                                          e.phi_to, opt_.mesh);
    return patch_body(r);
  }

  ordered_json patch_body(const AreaResult& r) {
    if (cmd_ == Command::area) return json_area(r);
    std::vector<Check> checks{
        {"area_vs_mesh", r.rel_residual, 10.0 * opt_.mesh.refine_tol}};
    return checks_json(checks);
  }

  const Scene& scene_;
  ParaboloidModel model_;
  Command cmd_;
  RunOptions opt_;
  std::size_t n_ok_ = 0, n_skipped_ = 0, n_degenerate_ = 0, n_invalid_ = 0;
  std::size_t n_checks_ = 0, n_failures_ = 0;
};

// --- csv flattening ---

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_scalar(const ordered_json& v) {
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return "";
}

void csv_leaves(const ordered_json& v, const std::string& path,
                const std::string& prefix, std::string& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      csv_leaves(it.value(), path.empty() ? it.key() : path + "." + it.key(),
                 prefix, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      csv_leaves(v[i], path + "[" + std::to_string(i) + "]", prefix, out);
  } else {
    out += prefix + csv_escape(path) + "," + csv_scalar(v) + "\n";
  }
}

std::string report_csv(const ordered_json& doc) {
  std::string out = "id,type,status,quantity,value\n";
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "entities") {
      csv_leaves(it.value(), it.key(), ",meta,,", out);
      continue;
    }
    for (const ordered_json& ent : it.value()) {
      std::string prefix =
          csv_escape(ent.value("id", "")) + "," + ent.value("type", "") + "," +
          ent.value("status", "") + ",";
      for (auto f = ent.begin(); f != ent.end(); ++f) {
        if (f.key() == "id" || f.key() == "type" || f.key() == "status")
          continue;
        csv_leaves(f.value(), f.key(), prefix, out);
      }
    }
  }
  return out;
}

}  // namespace

ReportOutcome build_report(const Scene& scene, Command cmd,
                           const RunOptions& opt) {
  return ReportBuilder(scene, cmd, opt).run();
}

std::string emit_report(const ordered_json& doc, Format format) {
  if (format == Format::csv) return report_csv(doc);
  return doc.dump(2) + "\n";
}

}  // namespace pdproj
