#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "pdproj/report.hpp"
#include "pdproj/scene.hpp"

namespace {

struct Options {
  std::string scene_path;
  double focal = 0.0;
  bool focal_set = false;
  std::string format = "json";
  std::string mesh;
  double tol_rel = 0.0;
  bool tol_rel_set = false;
  bool degrees = false;
  std::uint64_t seed = 1;
  std::uint64_t samples = 10000000;
};

// ROWSxCOLS, e.g. 64x64.
void apply_mesh(const std::string& text, pdproj::MeshSpec& mesh) {
  std::size_t xpos = text.find('x');
  if (xpos == std::string::npos || xpos == 0 || xpos + 1 == text.size())
    pdproj::raise(pdproj::errc::invalid_argument,
                  "--mesh expects ROWSxCOLS, e.g. 64x64");
  std::size_t used1 = 0, used2 = 0;
  int rows = 0, cols = 0;
  try {
    rows = std::stoi(text.substr(0, xpos), &used1);
    cols = std::stoi(text.substr(xpos + 1), &used2);
  } catch (const std::exception&) {
    pdproj::raise(pdproj::errc::invalid_argument,
                  "--mesh expects ROWSxCOLS, e.g. 64x64");
  }
  if (used1 != xpos || used2 != text.size() - xpos - 1 || rows < 2 || cols < 2)
    pdproj::raise(pdproj::errc::invalid_argument,
                  "--mesh expects ROWSxCOLS with rows, cols >= 2");
  mesh.rows = rows;
  mesh.cols = cols;
}

int run(pdproj::Command cmd, const Options& o) {
  pdproj::Scene scene = pdproj::load_scene(
      o.scene_path, o.degrees ? pdproj::AngleUnit::degrees
                              : pdproj::AngleUnit::from_document);
  if (o.focal_set) scene.focal = o.focal;
  if (o.tol_rel_set) scene.tol_rel = o.tol_rel;
  pdproj::RunOptions opt;
  if (!o.mesh.empty()) apply_mesh(o.mesh, opt.mesh);
  opt.seed = o.seed;
  opt.mc_samples = o.samples;
  pdproj::ReportOutcome outcome = pdproj::build_report(scene, cmd, opt);
  std::cout << pdproj::emit_report(
      outcome.doc, o.format == "csv" ? pdproj::Format::csv
                                     : pdproj::Format::json);
  if (cmd == pdproj::Command::validate && !outcome.validation_ok) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric properties of the paraboloidal double projection"};
  app.require_subcommand(1);
  Options o;

  const std::map<std::string, pdproj::Command> commands = {
      {"project", pdproj::Command::project},
      {"classify", pdproj::Command::classify},
      {"length", pdproj::Command::length},
      {"area", pdproj::Command::area},
      {"validate", pdproj::Command::validate},
  };
  const std::map<std::string, std::string> blurbs = {
      {"project", "both perspective images of every point entity"},
      {"classify", "focal-plane section of every segment entity"},
      {"length", "true lengths of segment images and their shadows"},
      {"area", "areas of patch and vertical-rectangle entities"},
      {"validate", "check every analytic result against its oracle"},
  };
  for (const auto& [name, cmd] : commands) {
    (void)cmd;
    CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
    sub->add_option("--scene", o.scene_path, "scene file (json)")
        ->required();
    sub->add_option("--focal", o.focal, "override the scene focal length")
        ->check(CLI::PositiveNumber)
        ->trigger_on_parse()
        ->each([&o](const std::string&) { o.focal_set = true; });
    sub->add_option("--format", o.format, "report format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--mesh", o.mesh, "mesh resolution ROWSxCOLS");
    sub->add_option("--tol-rel", o.tol_rel, "override the relative tolerance")
        ->check(CLI::PositiveNumber)
        ->trigger_on_parse()
        ->each([&o](const std::string&) { o.tol_rel_set = true; });
    sub->add_flag("--degrees", o.degrees,
                  "treat scene angles as degrees");
    sub->add_option("--seed", o.seed, "Monte-Carlo oracle seed (default 1)");
    sub->add_option("--samples", o.samples,
                    "Monte-Carlo oracle sample count (default 10000000)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run(commands.at(app.get_subcommands().front()->get_name()), o);
  } catch (const pdproj::Error& e) {
    std::cerr << "error [" << pdproj::errc_name(e.code()) << "]: " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
