#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diraclab/phs.hpp"

namespace diraclab::config {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EnergyKind { quadratic, quartic };

// One simulation scenario. Keys are `section.key` in the INI file; see README.
struct ScenarioConfig {
  // [scenario]
  std::string name = "run";
  phs::Preset preset = phs::Preset::telegraph1d;
  std::uint64_t seed = 1;
  // [mesh] one entry per axis; a single entry is broadcast.
  std::vector<int> cells{32};
  std::vector<double> lengths{1.0};
  // [time] without dt, dt = courant / sum_a 1/h_a.
  std::optional<double> dt;
  double courant = 0.25;
  int steps = 100;
  phs::Scheme scheme = phs::Scheme::rk4;
  // [boundary]
  phs::BoundaryMode boundary = phs::BoundaryMode::reflecting;
  // [energy] quartic: psi = 1/2 (w_p x_p^2 + w_q x_q^2) + 1/4 (c_p x_p^4 + c_q x_q^4), 1D only.
  EnergyKind energy = EnergyKind::quadratic;
  double weight_p = 1.0;
  double weight_q = 1.0;
  double quartic_p = 0.0;
  double quartic_q = 0.0;
  // [initial]
  phs::InitialCondition initial;
  // [output]
  std::filesystem::path output_dir = "out";
  int snapshot_every = 0;  // 0 writes the first and last state only
  // [verify]
  bool check_stokes_dirac = false;
  int isotropy_pairs = 20;
  bool check_lift = false;
  int lift_every = 10;
  bool check_infogeo = false;
  double kappa = 1.0;
  // [debug] added to one e_p value before every lift check
  double corrupt_effort = 0.0;

  int dimension() const { return phs::dimension_of(preset); }
  mesh::MeshPtr make_mesh() const;
  phs::EnergySpec energy_spec() const;
  double time_step(const mesh::Mesh& m) const;
};

// Throws ConfigError naming the offending key.
ScenarioConfig parse_config(std::istream& is);
ScenarioConfig load_config(const std::filesystem::path& path);
void validate(const ScenarioConfig& c);

}  // namespace diraclab::config
