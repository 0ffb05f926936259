#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "diraclab/config.hpp"
#include "diraclab/runner.hpp"
#include "diraclab/verify.hpp"

using namespace diraclab;

namespace {

// DIRAC_LAB_THREADS caps the OpenMP worker count; 0 or unset leaves the default.
bool apply_thread_cap() {
  const char* env = std::getenv("DIRAC_LAB_THREADS");
  if (env == nullptr || *env == '\0') return true;
  int n = -1;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, n);
  if (ec != std::errc{} || ptr != end || n < 0) {
    std::cerr << "error: DIRAC_LAB_THREADS must be a non-negative integer, got '" << env << "'\n";
    return false;
  }
  if (n > 0) omp_set_num_threads(n);
  return true;
}

template <class Body>
int guarded(Body body) {
  try {
    return body();
  } catch (const config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return runner::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return runner::kRuntimeError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diraclab: port-Hamiltonian simulation on Stokes-Dirac structures with contact and "
               "information-geometric verification"};
  app.require_subcommand(1);

  std::string run_config;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Integrate a scenario and write CSV reports");
  run->add_option("--config", run_config, "Scenario file")->required();
  run->add_option("--out", run_out, "Output directory (overrides output.dir)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an invariant battery: hodge|stokes|dirac|contact|infogeo|all");
  verify->add_option("suite", suite, "Suite name")->required();

  std::string ig_config;
  auto* infogeo = app.add_subcommand("infogeo", "Information-geometry report for a scenario's initial state");
  infogeo->add_option("--config", ig_config, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : runner::kConfigError;
  }
  if (!apply_thread_cap()) return runner::kConfigError;

  if (*run) {
    return guarded([&] {
      config::ScenarioConfig c = config::load_config(run_config);
      if (!run_out.empty()) c.output_dir = run_out;
      const runner::RunResult r = runner::run(c, std::cout);
      return r.passed() ? runner::kOk : runner::kVerificationFailed;
    });
  }
  if (*verify) {
    if (!verify::is_suite(suite)) {
      std::cerr << "error: unknown suite '" << suite << "'\n\n" << verify->help();
      return runner::kConfigError;
    }
    return guarded([&] {
      const auto rows = verify::run_suite(suite);
      runner::print_checks(std::cout, rows);
      const bool ok = runner::all_pass(rows);
      std::cout << rows.size() << " checks, " << (ok ? "all passed" : "FAILURES") << '\n';
      return ok ? runner::kOk : runner::kVerificationFailed;
    });
  }
  return guarded([&] {
    const config::ScenarioConfig c = config::load_config(ig_config);
    const runner::InfogeoReport r = runner::run_infogeo(c, std::cout);
    return runner::all_pass(r.checks) ? runner::kOk : runner::kVerificationFailed;
  });
}
