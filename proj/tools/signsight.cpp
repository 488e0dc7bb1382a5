#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "signsight/io/manifest.hpp"
#include "signsight/io/report.hpp"
#include "signsight/io/synthetic.hpp"

namespace fs = std::filesystem;
using namespace signsight;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

int run_evaluate(const std::string& manifest, const std::string& out_dir, bool export_field,
                 const std::string& params_file, unsigned jobs) {
  Scene scene;
  try {
    std::optional<fs::path> params;
    if (!params_file.empty()) params = params_file;
    scene = io::load_scene(manifest, params);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  try {
    const EvaluationResult result = evaluate(scene, jobs);
    io::write_reports(out_dir, result, export_field);
    std::cout << "evaluated " << result.signs.size() << " sign(s), " << result.failures() << " failed; reports in "
              << out_dir << "\n";
    for (const auto& s : result.signs) {
      if (!s.ok) std::cerr << "sign " << s.id << " failed: " << s.error << "\n";
    }
    return result.failures() == 0 ? kOk : kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

int run_validate(const std::string& manifest) {
  try {
    const Scene scene = io::load_scene(manifest);
    std::cout << "ok: " << scene.signs.size() << " sign(s), " << scene.environment.size() << " environment points, "
              << scene.markings.size() << " marking cluster(s)" << (scene.auto_fallback ? " (auto-fallback)" : "")
              << ", " << scene.library.size() << " sign type(s)\n";
    for (const auto& s : scene.signs) {
      std::cout << "  " << s.id << ": " << s.type << ", " << to_string(s.side) << ", sight distance "
                << s.sight_distance << " m, " << s.panel.size() << " panel points\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
}

int run_generate(const std::string& spec_path, const std::string& out_dir) {
  io::SyntheticSpec spec;
  try {
    spec = io::load_synthetic_spec(spec_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  try {
    const io::SyntheticScene scene = io::generate_synthetic(spec);
    io::write_synthetic(spec, scene, out_dir);
    std::cout << "wrote " << (fs::path(out_dir) / "manifest.toml").string() << "\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traffic sign visibility and timely recognizability from road point clouds"};
  app.require_subcommand(1);

  std::string manifest, out_dir, params_file, spec_path;
  bool export_field = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* eval = app.add_subcommand("evaluate", "Evaluate every sign in a scene manifest");
  eval->add_option("manifest", manifest, "Scene manifest")->required();
  eval->add_option("-o,--output", out_dir, "Report directory")->required();
  eval->add_flag("--export-field", export_field, "Also write field.csv");
  eval->add_option("--params", params_file, "key = value file overriding model parameters");
  eval->add_option("--jobs", jobs, "Signs evaluated concurrently")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen-synthetic", "Generate a synthetic scene from a spec file");
  gen->add_option("spec", spec_path, "Scene spec")->required();
  gen->add_option("-o,--output", out_dir, "Output directory")->required();

  auto* val = app.add_subcommand("validate", "Load and validate a scene manifest");
  val->add_option("manifest", manifest, "Scene manifest")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kValidation;
  }

  if (*eval) return run_evaluate(manifest, out_dir, export_field, params_file, jobs);
  if (*gen) return run_generate(spec_path, out_dir);
  return run_validate(manifest);
}
