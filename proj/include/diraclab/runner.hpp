#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "diraclab/config.hpp"
#include "diraclab/infogeo.hpp"

namespace diraclab::runner {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeError = 2, kVerificationFailed = 3 };

struct Tolerances {
  double power = 1e-10;  // relative, every step
  double isotropy = 1e-10;
  double lift_xy = 1e-10;
  double lift_z = 1e-8;
  double h_psi = 1e-12;
  double pairing = 1e-8;
  double connection = 1e-10;
  double divergence = 1e-10;
  double cotransform = 1e-9;
};

// One verified quantity: the worst residual seen and the bound it must meet.
struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual <= tolerance; }
};

bool all_pass(const std::vector<Check>& checks);
void print_checks(std::ostream& os, const std::vector<Check>& checks);
// CSV `check,residual,tolerance,status`.
void write_checks_csv(std::ostream& os, const std::vector<Check>& checks);

struct RunResult {
  std::filesystem::path dir;
  int steps = 0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  std::vector<Check> checks;
  bool passed() const { return all_pass(checks); }
};

// Integrates the scenario and writes, under <output dir>/<name>:
//   series.csv             t,E,dE_dt,boundary_flux,residual per step
//   alpha_p_<k>.coch ...   snapshots
//   lift.csv, lift_series.csv, divergence.csv when the checks are enabled
//   checks.csv             every check with its tolerance
// Throws std::runtime_error when the state stops being finite.
RunResult run(const config::ScenarioConfig& c, std::ostream& log, const Tolerances& tol = {});

struct InfogeoReport {
  std::vector<Check> checks;
  std::vector<infogeo::DivergenceRow> rows;
};

// Dually flat geometry of the fiber energy sampled at lifted points of a state.
InfogeoReport infogeo_report(const config::ScenarioConfig& c, const phs::Model& model, const phs::State& s,
                             const Tolerances& tol = {});

// Report for the initial state of a scenario; writes divergence.csv and checks.csv.
InfogeoReport run_infogeo(const config::ScenarioConfig& c, std::ostream& log, const Tolerances& tol = {});

}  // namespace diraclab::runner
