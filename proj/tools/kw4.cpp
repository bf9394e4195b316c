#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kw4/report.hpp"
#include "kw4/runner.hpp"
#include "kw4/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct Common {
  std::string report;
  unsigned jobs = 1;
  double tolerance = 0.0;
};

void add_common(CLI::App* cmd, Common& c, bool with_tolerance) {
  cmd->add_option("--report", c.report, "Write the machine report (JSON) to this path");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  if (with_tolerance) cmd->add_option("--tolerance", c.tolerance, "Override the pass tolerance")->check(CLI::PositiveNumber);
}

int finish(const kw4::Scenario& sc, const Common& c, const CLI::App* cmd) {
  kw4::RunOptions opts;
  opts.jobs = c.jobs;
  if (const CLI::Option* t = cmd->get_option_no_throw("--tolerance"); t && t->count() > 0) opts.tolerance = c.tolerance;
  const kw4::RunResult r = kw4::run_scenario(sc, opts);
  for (const std::string& line : r.text) std::cout << line << '\n';
  if (!c.report.empty()) kw4::write_report(r, c.report);
  return r.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kahler-Weyl verification harness for 4-dimensional (para-)Hermitian models"};
  app.set_version_flag("--version", std::string(KW4_VERSION));
  app.require_subcommand(1);

  Common run_opts, star_opts, example_opts, verify_opts;

  CLI::App* run = app.add_subcommand("run", "Run a scenario file");
  std::string scenario_path;
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  add_common(run, run_opts, true);

  CLI::App* star = app.add_subcommand("star-table", "Hodge star table of the flat para model");
  add_common(star, star_opts, false);

  CLI::App* example = app.add_subcommand("example-3-2", "Conformally flat para example e^{2f} dx2 dx4");
  std::vector<double> f;
  example->add_option("--f", f, "f1,f2,f3,f4")->delimiter(',')->expected(4)->required();
  add_common(example, example_opts, true);

  CLI::App* verify = app.add_subcommand("verify", "Random existence sweep");
  std::string kind = "para", signature = "2,2", scalars = "real";
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  bool flip = false, positive = false;
  verify->add_option("--kind", kind, "para|complex")->check(CLI::IsMember({"para", "complex"}));
  verify->add_option("--signature", signature, "2,2|0,4")->check(CLI::IsMember({"2,2", "0,4"}));
  verify->add_option("--scalars", scalars, "real|complex")->check(CLI::IsMember({"real", "complex"}));
  verify->add_option("--trials", trials, "Number of random models")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Base seed");
  verify->add_flag("--flip-orientation", flip, "Reverse the Kahler orientation");
  verify->add_flag("--positive-definite", positive, "Use +Id instead of -Id for signature 0,4");
  add_common(verify, verify_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "kw4: error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*run) {
      const kw4::Scenario sc = kw4::load_scenario(scenario_path);
      return finish(sc, run_opts, run);
    }
    kw4::Scenario sc;
    if (*star) {
      sc.mode = kw4::Mode::StarTable;
      return finish(sc, star_opts, star);
    }
    if (*example) {
      sc.mode = kw4::Mode::Example32;
      sc.f = std::array<double, 4>{f[0], f[1], f[2], f[3]};
      return finish(sc, example_opts, example);
    }
    sc.mode = kw4::Mode::Verify;
    sc.kind = *kw4::parse_kind(kind);
    sc.signature = *kw4::parse_signature(signature);
    if (sc.kind == kw4::StructureKind::Para && sc.signature == kw4::Signature::Definite) {
      std::cerr << "kw4: error: --signature: para-Hermitian models have signature 2,2\n";
      return kExitInvalid;
    }
    sc.scalars = scalars == "complex" ? kw4::ScalarField::Complex : kw4::ScalarField::Real;
    sc.trials = trials;
    sc.seed = seed;
    sc.flip_orientation = flip;
    sc.positive_definite = positive;
    return finish(sc, verify_opts, verify);
  } catch (const kw4::ScenarioError& e) {
    std::cerr << e.message() << '\n';
    return kExitInvalid;
  } catch (const kw4::Error& e) {
    std::cerr << "kw4: error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
