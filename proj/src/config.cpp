#include "diraclab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

namespace diraclab::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// One `section.key` with its raw inputs.
struct Entry {
  std::string key;
  std::vector<std::string> inputs;

  [[noreturn]] void fail(const std::string& why) const { throw ConfigError(key + ": " + why); }

  const std::string& single() const {
    if (inputs.size() != 1) fail("expected a single value");
    return inputs.front();
  }

  double number(const std::string& text) const {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || end != t.data() + t.size()) fail("'" + text + "' is not a number");
    return v;
  }
  double real() const { return number(single()); }

  long long integer_of(const std::string& text) const {
    const std::string t = trim(text);
    long long v = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || end != t.data() + t.size()) fail("'" + text + "' is not an integer");
    return v;
  }
  long long integer() const { return integer_of(single()); }

  bool boolean() const {
    const std::string t = trim(single());
    if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
    if (t == "false" || t == "no" || t == "off" || t == "0") return false;
    fail("'" + t + "' is not a boolean");
  }

  std::string text() const { return trim(single()); }

  // Values may arrive as separate inputs or as one comma-separated string.
  std::vector<std::string> list() const {
    std::vector<std::string> out;
    for (const auto& in : inputs) {
      std::stringstream ss(in);
      std::string part;
      while (std::getline(ss, part, ',')) {
        part = trim(part);
        if (!part.empty()) out.push_back(part);
      }
    }
    if (out.empty()) fail("expected at least one value");
    return out;
  }
};

template <class Parse>
auto enum_value(const Entry& e, Parse parse) {
  try {
    return parse(e.text());
  } catch (const std::invalid_argument& ex) {
    e.fail(ex.what());
  }
}

void apply(ScenarioConfig& c, const Entry& e) {
  const std::string& k = e.key;
  if (k == "scenario.name") {
    c.name = e.text();
  } else if (k == "scenario.preset") {
    c.preset = enum_value(e, phs::parse_preset);
  } else if (k == "scenario.seed") {
    const long long s = e.integer();
    if (s < 0) e.fail("must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (k == "mesh.cells") {
    c.cells.clear();
    for (const auto& v : e.list()) c.cells.push_back(static_cast<int>(e.integer_of(v)));
  } else if (k == "mesh.length") {
    c.lengths.clear();
    for (const auto& v : e.list()) c.lengths.push_back(e.number(v));
  } else if (k == "time.dt") {
    c.dt = e.real();
  } else if (k == "time.courant") {
    c.courant = e.real();
  } else if (k == "time.steps") {
    c.steps = static_cast<int>(e.integer());
  } else if (k == "time.scheme") {
    c.scheme = enum_value(e, phs::parse_scheme);
  } else if (k == "boundary.mode") {
    c.boundary = enum_value(e, phs::parse_boundary_mode);
  } else if (k == "energy.kind") {
    const std::string v = e.text();
    if (v == "quadratic") {
      c.energy = EnergyKind::quadratic;
    } else if (v == "quartic") {
      c.energy = EnergyKind::quartic;
    } else {
      e.fail("unknown energy kind '" + v + "'");
    }
  } else if (k == "energy.weight_p") {
    c.weight_p = e.real();
  } else if (k == "energy.weight_q") {
    c.weight_q = e.real();
  } else if (k == "energy.quartic_p") {
    c.quartic_p = e.real();
  } else if (k == "energy.quartic_q") {
    c.quartic_q = e.real();
  } else if (k == "initial.kind") {
    c.initial.kind = enum_value(e, phs::parse_initial_kind);
  } else if (k == "initial.amplitude") {
    c.initial.amplitude = e.real();
  } else if (k == "initial.mode") {
    c.initial.mode = static_cast<int>(e.integer());
  } else if (k == "initial.center") {
    c.initial.center = e.real();
  } else if (k == "initial.width") {
    c.initial.width = e.real();
  } else if (k == "output.dir") {
    c.output_dir = e.text();
  } else if (k == "output.snapshot_every") {
    c.snapshot_every = static_cast<int>(e.integer());
  } else if (k == "verify.stokes_dirac") {
    c.check_stokes_dirac = e.boolean();
  } else if (k == "verify.isotropy_pairs") {
    c.isotropy_pairs = static_cast<int>(e.integer());
  } else if (k == "verify.lift") {
    c.check_lift = e.boolean();
  } else if (k == "verify.lift_every") {
    c.lift_every = static_cast<int>(e.integer());
  } else if (k == "verify.infogeo") {
    c.check_infogeo = e.boolean();
  } else if (k == "verify.kappa") {
    c.kappa = e.real();
  } else if (k == "debug.corrupt_effort") {
    c.corrupt_effort = e.real();
  } else {
    throw ConfigError("unknown key '" + k + "'");
  }
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

ScenarioConfig parse_config(std::istream& is) {
  CLI::ConfigINI ini;
  ini.comment('#');
  std::vector<CLI::ConfigItem> items;
  try {
    items = ini.from_config(is);
  } catch (const CLI::Error& ex) {
    throw ConfigError(std::string("malformed config: ") + ex.what());
  }

  // The reader merges a repeated key into one multi-valued item, so scalar
  // keys given twice fail as "expected a single value".
  ScenarioConfig c;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string key;
    for (const auto& p : item.parents) key += p + ".";
    key += item.name;
    if (item.parents.size() != 1) throw ConfigError("unknown key '" + key + "' (keys belong to a [section])");
    apply(c, Entry{key, item.inputs});
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  return parse_config(in);
}

void validate(const ScenarioConfig& c) {
  const int n = c.dimension();
  if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("scenario.name must be a non-empty plain file name");
  }
  auto check_axes = [n](std::size_t size, const char* key) {
    if (size != 1 && size != static_cast<std::size_t>(n)) {
      throw ConfigError(std::string(key) + ": preset needs 1 or " + std::to_string(n) + " values, got " +
                        std::to_string(size));
    }
  };
  check_axes(c.cells.size(), "mesh.cells");
  check_axes(c.lengths.size(), "mesh.length");
  for (int v : c.cells) {
    if (v < 1) throw ConfigError("mesh.cells must be positive");
  }
  for (double v : c.lengths) {
    if (!finite_positive(v)) throw ConfigError("mesh.length must be positive");
  }
  if (c.dt && !finite_positive(*c.dt)) throw ConfigError("time.dt must be positive");
  if (!finite_positive(c.courant)) throw ConfigError("time.courant must be positive");
  if (c.steps < 1) throw ConfigError("time.steps must be at least 1");
  if (!finite_positive(c.weight_p)) throw ConfigError("energy.weight_p must be positive");
  if (!finite_positive(c.weight_q)) throw ConfigError("energy.weight_q must be positive");
  if (!(c.quartic_p >= 0.0) || !std::isfinite(c.quartic_p)) throw ConfigError("energy.quartic_p must be non-negative");
  if (!(c.quartic_q >= 0.0) || !std::isfinite(c.quartic_q)) throw ConfigError("energy.quartic_q must be non-negative");
  if (c.energy == EnergyKind::quartic && n != 1) {
    throw ConfigError("energy.kind: quartic energy needs a 1D preset, got " + phs::to_string(c.preset));
  }
  if (!std::isfinite(c.initial.amplitude)) throw ConfigError("initial.amplitude must be finite");
  if (c.initial.mode < 1) throw ConfigError("initial.mode must be at least 1");
  if (!finite_positive(c.initial.width)) throw ConfigError("initial.width must be positive");
  if (!std::isfinite(c.initial.center)) throw ConfigError("initial.center must be finite");
  if (c.output_dir.empty()) throw ConfigError("output.dir must not be empty");
  if (c.snapshot_every < 0) throw ConfigError("output.snapshot_every must be non-negative");
  if (c.isotropy_pairs < 1) throw ConfigError("verify.isotropy_pairs must be at least 1");
  if (c.lift_every < 1) throw ConfigError("verify.lift_every must be at least 1");
  if (!finite_positive(c.kappa)) throw ConfigError("verify.kappa must be positive");
  if (!std::isfinite(c.corrupt_effort)) throw ConfigError("debug.corrupt_effort must be finite");
}

mesh::MeshPtr ScenarioConfig::make_mesh() const {
  const int n = dimension();
  std::vector<int> cpa(static_cast<std::size_t>(n), cells.front());
  std::vector<double> len(static_cast<std::size_t>(n), lengths.front());
  if (cells.size() == cpa.size()) cpa = cells;
  if (lengths.size() == len.size()) len = lengths;
  return mesh::make_mesh(n, cpa, len);
}

phs::EnergySpec ScenarioConfig::energy_spec() const {
  if (energy == EnergyKind::quadratic) return phs::EnergySpec::quadratic(weight_p, weight_q);
  auto psi = std::make_shared<density::PolynomialDensity>(
      2, std::vector<double>{weight_p, 0.0, 0.0, weight_q}, std::vector<double>{0.0, 0.0},
      std::vector<double>{quartic_p, quartic_q});
  return phs::EnergySpec::pointwise(std::move(psi));
}

double ScenarioConfig::time_step(const mesh::Mesh& m) const { return dt ? *dt : phs::cfl_dt(m, courant); }

}  // namespace diraclab::config
