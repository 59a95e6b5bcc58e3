// mediatrix: run scenes and theorem suites, write reports and exports.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mediatrix/pipeline.hpp"

namespace fs = std::filesystem;
using namespace mediatrix;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

scene::SceneSpec resolve_spec(const std::string& what, std::uint64_t seed) {
  if (fs::is_regular_file(what)) return scene::load_scene(what);
  if (what.ends_with(".json")) throw InputError("cannot read scene file '" + what + "'");
  return scene::builtin_scene(what, seed);
}

void print_verdicts(const pipeline::SceneResult& r) {
  std::cout << r.spec.id << " [" << r.hash << "]";
  if (r.stats) std::cout << "  beta1=" << r.stats->beta1 << " length=" << r.stats->length;
  std::cout << '\n';
  for (const auto& v : r.verdicts)
    std::cout << "  " << (v.pass ? "pass" : "FAIL") << "  " << v.check << "  " << v.detail << '\n';
  if (r.spec.kind == scene::SceneKind::kLine)
    for (const auto& p : r.intervals)
      std::cout << "  " << (p.interval ? "interval [" : "point [") << p.lo << ", " << p.hi << "]\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equidistant sets on polyhedral Alexandrov surfaces"};
  app.require_subcommand(1);

  std::string target, out_dir = ".", suite_name;
  double resolution = 0.0;
  std::vector<std::string> checks, exports;
  std::uint64_t seed = 0;
  bool require_cbb = false;
  unsigned workers = 0;

  auto* run = app.add_subcommand("run", "run one scene (JSON file or builtin name)");
  run->add_option("scene", target, "scene file or builtin name")->required();
  run->add_option("--resolution,-r", resolution, "mesh resolution h")->check(CLI::PositiveNumber);
  run->add_option("--checks", checks, "checks to run (comma separated)")->delimiter(',');
  run->add_option("--export", exports, "svg, obj or csv (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember({"svg", "obj", "csv"}));
  run->add_option("--out,-o", out_dir, "output directory");
  auto* seed_opt = run->add_option("--seed", seed, "seed for random scenes");
  run->add_flag("--require-cbb", require_cbb, "stop when the surface fails validation");

  auto* suite = app.add_subcommand("suite", "run a theorem suite");
  suite->add_option("name", suite_name, "suite name")->required()->check(CLI::IsMember(pipeline::suite_names()));
  suite->add_option("--out,-o", out_dir, "output directory");
  suite->add_option("--seed", seed, "seed for random scenes");
  suite->add_option("--workers,-j", workers, "concurrent scenes (0 = all cores)");

  auto* scenes = app.add_subcommand("scenes", "list builtin scenes and suites");

  auto* show = app.add_subcommand("show", "print a builtin scene as JSON");
  show->add_option("scene", target, "builtin name")->required();
  show->add_option("--seed", seed, "seed for random scenes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*scenes) {
      for (const auto& n : scene::builtin_scenes()) std::cout << n << '\n';
      std::cout << "bell-0 .. bell-19 (seeded)\n\nsuites:\n";
      for (const auto& s : pipeline::suite_names()) {
        std::cout << "  " << s << ':';
        for (const auto& id : pipeline::suite_scenes(s)) std::cout << ' ' << id;
        std::cout << '\n';
      }
      return kExitPass;
    }
    if (*show) {
      std::cout << scene::dump_scene(scene::builtin_scene(target, seed)) << '\n';
      return kExitPass;
    }
    fs::create_directories(out_dir);
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      std::cerr << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    };
    if (*run) {
      pipeline::RunOptions opt;
      opt.h = resolution;
      opt.checks = checks;
      if (seed_opt->count()) opt.seed = seed;
      opt.require_cbb = require_cbb;
      auto r = pipeline::run_scene(resolve_spec(target, seed), opt);
      write_file(fs::path(out_dir) / "report.json", pipeline::report_json(r));
      for (const auto& e : exports) {
        if (e == "svg") write_file(fs::path(out_dir) / "complex.svg", pipeline::export_svg(r));
        if (e == "obj") write_file(fs::path(out_dir) / "complex.obj", pipeline::export_obj(r));
        if (e == "csv") write_file(fs::path(out_dir) / "boxcount.csv", pipeline::export_boxcount_csv(r));
      }
      print_verdicts(r);
      elapsed();
      if (r.aborted) std::cerr << "surface failed validation (--require-cbb)\n";
      return r.pass() ? kExitPass : kExitFail;
    }
    auto r = pipeline::run_suite(suite_name, seed, workers);
    write_file(fs::path(out_dir) / "report.json", pipeline::suite_json(r));
    for (const auto& s : r.scenes) print_verdicts(s);
    for (const auto& e : r.errors) std::cout << "ERROR " << e << '\n';
    elapsed();
    std::cout << suite_name << ": " << r.passed() << "/" << r.scenes.size() + r.errors.size() << " scenes pass\n";
    return r.pass() ? kExitPass : kExitFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
