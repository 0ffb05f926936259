#include "diraclab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "diraclab/lift.hpp"
#include "diraclab/stokes_dirac.hpp"

namespace diraclab::runner {

namespace fs = std::filesystem;
using config::ScenarioConfig;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write '" + p.string() + "'");
  return os;
}

struct Scenario {
  phs::Model model;
  phs::State state;
};

Scenario build(const ScenarioConfig& c) {
  const mesh::MeshPtr m = c.make_mesh();
  phs::Setup setup = phs::make_preset(c.preset, m, c.initial, c.energy_spec());
  phs::Model model(m, phs::signature_of(c.preset), setup.spec, c.boundary);
  // Reflecting walls hold e_q at zero, so the matching energy values start at zero.
  for (std::size_t i : model.clamped()) setup.state.alpha_q[i] = 0.0;
  return Scenario{std::move(model), std::move(setup.state)};
}

void fill_uniform(forms::Cochain& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& v : c.values()) v = u(rng);
}

Check isotropy_check(const ScenarioConfig& c, const phs::Model& model, double tol) {
  const auto& m = model.mesh();
  const auto& sig = model.signature();
  std::mt19937_64 rng(c.seed);
  Check chk{"stokes-dirac isotropy", 0.0, tol};
  for (int k = 0; k < c.isotropy_pairs; ++k) {
    forms::Cochain ep = stokes_dirac::zero_effort_p(m, sig);
    forms::Cochain eq = stokes_dirac::zero_effort_q(m, sig);
    forms::Cochain ep2 = ep;
    forms::Cochain eq2 = eq;
    fill_uniform(ep, rng);
    fill_uniform(eq, rng);
    fill_uniform(ep2, rng);
    fill_uniform(eq2, rng);
    chk.residual = std::max(chk.residual, stokes_dirac::check_isotropy(ep, eq, ep2, eq2, sig, model.boundary()));
  }
  return chk;
}

void write_snapshots(const fs::path& dir, const phs::State& s, int step) {
  const std::string suffix = "_" + std::to_string(step) + ".coch";
  auto p = open_out(dir / ("alpha_p" + suffix));
  forms::write_snapshot(p, s.alpha_p);
  auto q = open_out(dir / ("alpha_q" + suffix));
  forms::write_snapshot(q, s.alpha_q);
}

void write_rows(const fs::path& path, const std::vector<infogeo::DivergenceRow>& rows) {
  auto os = open_out(path);
  infogeo::write_divergence_csv(os, rows);
}

void write_checks(const fs::path& path, const std::vector<Check>& checks) {
  auto os = open_out(path);
  write_checks_csv(os, checks);
}

}  // namespace

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

void print_checks(std::ostream& os, const std::vector<Check>& checks) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-44s %12s %12s  %s\n", "check", "residual", "tolerance", "status");
  os << buf;
  for (const Check& c : checks) {
    std::snprintf(buf, sizeof buf, "%-44s %12.3e %12.3e  %s\n", c.name.c_str(), c.residual, c.tolerance,
                  c.pass() ? "PASS" : "FAIL");
    os << buf;
  }
}

void write_checks_csv(std::ostream& os, const std::vector<Check>& checks) {
  os << "check,residual,tolerance,status\n";
  for (const Check& c : checks) {
    os << c.name << ',' << fmt17(c.residual) << ',' << fmt17(c.tolerance) << ',' << (c.pass() ? "PASS" : "FAIL")
       << '\n';
  }
}

InfogeoReport infogeo_report(const ScenarioConfig& c, const phs::Model& model, const phs::State& s,
                             const Tolerances& tol) {
  const contact::Lift lift(model, contact::LinearGamma{c.kappa});
  const contact::LiftedState ls = lift.lift_state(s);
  const std::size_t count = std::min<std::size_t>(8, ls.cells);
  std::vector<std::vector<double>> xs;
  double reach = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    xs.push_back(ls.at(i * ls.cells / count, 0).point.x);
    for (double v : xs.back()) reach = std::max(reach, std::abs(v));
  }

  const density::DensityPtr& psi = lift.fiber_density();
  const infogeo::DuallyFlatChart chart(psi, infogeo::SearchBox::cube(psi->dim(), 2.0 * reach + 1.0));

  InfogeoReport r;
  Check pairing{"infogeo duality pairing", 0.0, tol.pairing};
  Check connection{"infogeo alpha-connection identity", 0.0, tol.connection};
  Check self{"infogeo divergence D(xi||xi)", 0.0, tol.divergence};
  Check sign{"infogeo divergence negativity", 0.0, tol.divergence};
  for (const auto& x : xs) {
    pairing.residual = std::max(pairing.residual, infogeo::duality_pairing_check(chart, x));
    connection.residual = std::max(connection.residual, infogeo::connection_identity_residual(*psi, x, 0.5));
  }
  for (const auto& xi : xs) {
    for (const auto& xp : xs) {
      const double d = infogeo::canonical_divergence(chart, xi, xp);
      r.rows.push_back({xi, xp, d});
      if (&xi == &xp) self.residual = std::max(self.residual, std::abs(d));
      sign.residual = std::max(sign.residual, -d);
    }
  }
  r.checks = {pairing, connection, self, sign};

  if (model.spec().kind == phs::EnergySpec::Kind::quadratic) {
    const density::DensityPtr closed = infogeo::quadratic_cotransform(model.spec(), model.signature());
    Check co{"infogeo numeric vs closed-form phi", 0.0, tol.cotransform};
    for (const auto& x : xs) {
      const std::vector<double> y = psi->grad(x);
      const double exact = closed->value(y);
      co.residual = std::max(co.residual, std::abs(chart.phi().value(y) - exact) / std::max(1.0, std::abs(exact)));
    }
    r.checks.push_back(co);
  }
  return r;
}

InfogeoReport run_infogeo(const ScenarioConfig& c, std::ostream& log, const Tolerances& tol) {
  const Scenario sc = build(c);
  const fs::path dir = c.output_dir / c.name;
  fs::create_directories(dir);
  InfogeoReport r = infogeo_report(c, sc.model, sc.state, tol);
  write_rows(dir / "divergence.csv", r.rows);
  write_checks(dir / "checks.csv", r.checks);
  log << "infogeo " << c.name << ": " << phs::to_string(c.preset) << ", fiber dimension "
      << r.rows.front().xi.size() << ", " << r.rows.size() << " divergence rows\n";
  print_checks(log, r.checks);
  return r;
}

RunResult run(const ScenarioConfig& c, std::ostream& log, const Tolerances& tol) {
  Scenario sc = build(c);
  const phs::Model& model = sc.model;
  phs::State state = std::move(sc.state);
  const double dt = c.time_step(*model.mesh());

  RunResult res;
  res.dir = c.output_dir / c.name;
  res.steps = c.steps;
  fs::create_directories(res.dir);
  log << "run " << c.name << ": " << phs::to_string(c.preset) << " " << model.signature().label() << ", "
      << model.mesh()->count(model.mesh()->dim()) << " cells, dt " << dt << ", " << c.steps << " "
      << phs::to_string(c.scheme) << " steps, " << phs::to_string(c.boundary) << " boundary\n";

  if (c.check_stokes_dirac) res.checks.push_back(isotropy_check(c, model, tol.isotropy));

  std::optional<contact::Lift> lift;
  if (c.check_lift) lift.emplace(model, contact::LinearGamma{c.kappa});
  Check lx{"lift x-dot residual", 0.0, tol.lift_xy};
  Check ly{"lift y-dot residual", 0.0, tol.lift_xy};
  Check lz{"lift z-dot identity", 0.0, tol.lift_z};
  Check lh{"lift h_psi", 0.0, tol.h_psi};
  contact::LiftReport last_lift;
  std::ofstream lift_series;
  if (lift) {
    lift_series = open_out(res.dir / "lift_series.csv");
    lift_series << "step,t,max_res_x,max_res_y,max_res_z,max_h_psi\n";
  }

  auto series = open_out(res.dir / "series.csv");
  series << "t,E,dE_dt,boundary_flux,residual\n";
  Check power{"power balance (relative)", 0.0, tol.power};
  const phs::PowerBalanceReport initial = model.power_balance(state);
  power.residual = initial.relative_residual;
  res.initial_energy = initial.energy;
  write_snapshots(res.dir, state, 0);

  for (int k = 1; k <= c.steps; ++k) {
    state = model.step(state, dt, c.scheme);
    const phs::PowerBalanceReport pb = model.power_balance(state);
    if (!std::isfinite(pb.energy) || !std::isfinite(pb.dE_dt)) {
      throw std::runtime_error("state is no longer finite at step " + std::to_string(k) + " (t = " +
                               fmt17(state.time) + "); reduce time.dt or time.courant");
    }
    series << fmt17(pb.time) << ',' << fmt17(pb.energy) << ',' << fmt17(pb.dE_dt) << ',' << fmt17(pb.boundary_flux)
           << ',' << fmt17(pb.residual) << '\n';
    power.residual = std::max(power.residual, pb.relative_residual);
    res.final_energy = pb.energy;

    if (k == c.steps || (c.snapshot_every > 0 && k % c.snapshot_every == 0)) write_snapshots(res.dir, state, k);

    if (lift && (k % c.lift_every == 0 || k == c.steps)) {
      phs::Efforts e = model.effort(state);
      if (c.corrupt_effort != 0.0) e.e_p[e.e_p.size() / 2] += c.corrupt_effort;
      last_lift = lift->verify(state, e);
      lx.residual = std::max(lx.residual, last_lift.max_res_x);
      ly.residual = std::max(ly.residual, last_lift.max_res_y);
      lz.residual = std::max(lz.residual, last_lift.max_res_z);
      lh.residual = std::max(lh.residual, last_lift.max_h_psi);
      lift_series << k << ',' << fmt17(state.time) << ',' << fmt17(last_lift.max_res_x) << ','
                  << fmt17(last_lift.max_res_y) << ',' << fmt17(last_lift.max_res_z) << ','
                  << fmt17(last_lift.max_h_psi) << '\n';
    }
  }
  res.checks.push_back(power);

  if (lift) {
    auto os = open_out(res.dir / "lift.csv");
    contact::write_lift_csv(os, last_lift);
    res.checks.insert(res.checks.end(), {lx, ly, lz, lh});
  }
  if (c.check_infogeo) {
    InfogeoReport ig = infogeo_report(c, model, state, tol);
    write_rows(res.dir / "divergence.csv", ig.rows);
    res.checks.insert(res.checks.end(), ig.checks.begin(), ig.checks.end());
  }
  write_checks(res.dir / "checks.csv", res.checks);

  const double drift = res.initial_energy > 0.0
                           ? std::abs(res.final_energy - res.initial_energy) / res.initial_energy
                           : std::abs(res.final_energy - res.initial_energy);
  log << "energy " << res.initial_energy << " -> " << res.final_energy << " (relative drift " << drift << ")\n";
  print_checks(log, res.checks);
  log << (res.passed() ? "all checks passed" : "verification FAILED") << ", output in " << res.dir.string() << '\n';
  return res;
}

}  // namespace diraclab::runner
