#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "pdproj/area.hpp"
#include "pdproj/scene.hpp"

namespace pdproj {

inline constexpr const char* kToolName = "pdproj";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Command { project, classify, length, area, validate };
enum class Format { json, csv };

const char* command_name(Command cmd);

struct RunOptions {
  MeshSpec mesh;
  std::uint64_t mc_samples = 10000000;
  std::uint64_t seed = 1;
};

struct ReportOutcome {
  nlohmann::ordered_json doc;
  bool validation_ok = true;
};

// Runs one command over every entity of the scene. Entities a command does
// not apply to appear with status "skipped"; entities whose computation
// raises a geometric degeneracy (or other contract error) appear with an
// in-band diagnostic. The document layout is fixed, carries no timestamps,
// and is byte-deterministic for a fixed scene, options, and tool version.
ReportOutcome build_report(const Scene& scene, Command cmd,
                           const RunOptions& opt = {});

// Shortest representation that parses back to the same double (never more
// than 17 significant digits).
std::string format_double(double x);

// json: 2-space indented, insertion-ordered keys. csv: header row
// id,type,status,quantity,value and one row per scalar leaf, metadata
// included with type "meta".
std::string emit_report(const nlohmann::ordered_json& doc, Format format);

}  // namespace pdproj
