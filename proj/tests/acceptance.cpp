// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diraclab/contact.hpp"
#include "diraclab/infogeo.hpp"
#include "diraclab/lift.hpp"
#include "diraclab/stokes_dirac.hpp"

using namespace diraclab;
namespace fs = std::filesystem;
using density::DensityPtr;
using density::PolynomialDensity;
using forms::Cochain;
using forms::Grid;

namespace {

// A measured quantity and its bound.
struct Item {
  std::string what;
  double value;
  double limit;
  bool ok() const { return value <= limit; }
};

struct Outcome {
  std::vector<Item> items;
  std::string note;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

bool criterion(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  std::string error;
  try {
    out = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = error.empty() && secs < time_limit;
  for (const Item& it : out.items) ok = ok && it.ok();

  std::printf("%s  criterion %d: %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              time_limit);
  for (const Item& it : out.items) {
    std::printf("        %-58s %10s <= %-8s %s\n", it.what.c_str(), sci(it.value).c_str(), sci(it.limit).c_str(),
                it.ok() ? "" : "<-- exceeds bound");
  }
  if (!out.note.empty()) std::printf("        %s\n", out.note.c_str());
  if (!error.empty()) std::printf("        exception: %s\n", error.c_str());
  std::fflush(stdout);
  return ok;
}

mesh::MeshPtr box(std::vector<int> cells, std::vector<double> lengths) {
  return mesh::make_mesh(static_cast<int>(cells.size()), cells, lengths);
}

Cochain random_cochain(const mesh::MeshPtr& m, int degree, Grid grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Cochain c(m, degree, grid);
  for (double& v : c.values()) v = u(rng);
  return c;
}

std::vector<double> random_vector(std::size_t dim, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(dim);
  for (double& x : v) x = u(rng);
  return v;
}

const std::vector<phs::Preset> kPresets{phs::Preset::telegraph1d, phs::Preset::wave2d, phs::Preset::maxwell3d_pq22,
                                        phs::Preset::em3d_p1q3};

mesh::MeshPtr preset_mesh(phs::Preset p) {
  switch (phs::dimension_of(p)) {
    case 1: return box({64}, {1.0});
    case 2: return box({32, 32}, {1.0, 1.0});
    default: return box({8, 8, 8}, {1.0, 1.0, 1.0});
  }
}

// ---------------------------------------------------------------- 1
Outcome hodge_battery() {
  std::mt19937_64 rng(1);
  Outcome o;
  const std::vector<mesh::MeshPtr> meshes{box({7}, {1.3}), box({5, 6}, {1.0, 0.4}), box({4, 3, 5}, {0.9, 1.7, 0.6})};
  for (const auto& m : meshes) {
    const int n = m->dim();
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      for (int k = 0; k <= n; ++k) {
        for (Grid g : {Grid::primal, Grid::dual}) {
          const Cochain c = random_cochain(m, k, g, rng);
          // Lemma signs: identity in 1D and 3D, (-1)^k in 2D.
          const double sign = (n == 2 && k % 2 == 1) ? -1.0 : 1.0;
          const Cochain back = forms::hodge(forms::hodge(c));
          if (back.grid() != c.grid() || back.degree() != k) throw std::runtime_error("star star changed the grid");
          worst = std::max(worst, forms::max_abs_diff(back, sign * c));
        }
      }
    }
    o.items.push_back({"max |star star c - sign c| " + std::to_string(n) + "D", worst, 1e-12});
  }
  return o;
}

// ---------------------------------------------------------------- 2
Outcome stokes_theorem() {
  std::mt19937_64 rng(2);
  Outcome o;
  const std::vector<mesh::MeshPtr> meshes{box({9}, {2.0}), box({6, 5}, {1.0, 0.3}), box({4, 5, 3}, {1.1, 0.7, 2.0})};
  for (const auto& m : meshes) {
    const int n = m->dim();
    const auto b = std::make_shared<const mesh::BoundaryMesh>(mesh::boundary_complex(m));
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      for (Grid g : {Grid::primal, Grid::dual}) {
        const Cochain c = random_cochain(m, n - 1, g, rng);
        const double inside = forms::integrate_top(forms::exterior_derivative(c));
        const double boundary = forms::boundary_sum(forms::trace_boundary(c, b));
        worst = std::max(worst, std::abs(inside - boundary));
      }
    }
    o.items.push_back({"max |int dc - int_bnd tr c| " + std::to_string(n) + "D", worst, 1e-13});
  }
  return o;
}

// ---------------------------------------------------------------- 3
Outcome isotropy() {
  std::mt19937_64 rng(3);
  Outcome o;
  const std::vector<mesh::MeshPtr> meshes{box({12}, {1.0}), box({6, 5}, {1.0, 0.8}), box({4, 3, 3}, {1.0, 0.9, 1.2})};
  std::vector<std::pair<stokes_dirac::Signature, mesh::MeshPtr>> cases;
  for (const phs::Preset p : kPresets) cases.emplace_back(phs::signature_of(p), meshes[phs::dimension_of(p) - 1]);
  for (const auto& [sig, m] : cases) {
    const auto b = std::make_shared<const mesh::BoundaryMesh>(mesh::boundary_complex(m));
    double worst = 0.0;
    for (int pair = 0; pair < 100; ++pair) {
      const Cochain ep = random_cochain(m, sig.n - sig.p, Grid::dual, rng);
      const Cochain eq = random_cochain(m, sig.n - sig.q, Grid::primal, rng);
      const Cochain ep2 = random_cochain(m, sig.n - sig.p, Grid::dual, rng);
      const Cochain eq2 = random_cochain(m, sig.n - sig.q, Grid::primal, rng);
      worst = std::max(worst, stokes_dirac::check_isotropy(ep, eq, ep2, eq2, sig, b));
    }
    o.items.push_back({"isotropy " + sig.label() + ", 100 pairs (relative)", worst, 1e-10});
  }
  // Dense check on 1D meshes of 1..8 cells: the image pairs to zero with
  // itself, so it lies inside its annihilator, and rank + annihilator = total.
  double self = 0.0;
  double miscount = 0.0;
  for (int cells = 1; cells <= 8; ++cells) {
    const auto dc = stokes_dirac::dimension_count(box({cells}, {1.0}), {1, 1, 1});
    self = std::max(self, dc.self_pairing);
    if (!dc.complementary() || dc.annihilator < dc.image) miscount = 1.0;
  }
  o.items.push_back({"dimension count 1D <= 8 cells: self pairing of image", self, 1e-10});
  o.items.push_back({"dimension count 1D <= 8 cells: count mismatch (0/1)", miscount, 0.0});
  return o;
}

// ---------------------------------------------------------------- 4
Outcome power_balance() {
  Outcome o;
  for (const phs::Preset p : kPresets) {
    const auto m = preset_mesh(p);
    const phs::Setup setup = phs::make_preset(p, m, {});
    const phs::Model model(m, phs::signature_of(p), setup.spec, phs::BoundaryMode::reflecting);
    phs::State s = setup.state;
    const double dt = phs::cfl_dt(*m, 0.25);
    const double e0 = model.energy(s);
    double residual = model.power_balance(s).relative_residual;
    double drift = 0.0;
    for (int k = 0; k < 1000; ++k) {
      s = model.step(s, dt, phs::Scheme::rk4);
      const phs::PowerBalanceReport pb = model.power_balance(s);
      residual = std::max(residual, pb.relative_residual);
      drift = std::max(drift, std::abs(pb.energy - e0) / e0);
    }
    o.items.push_back({phs::to_string(p) + " power-balance residual, every step", residual, 1e-10});
    o.items.push_back({phs::to_string(p) + " energy drift / E over 1000 rk4 steps", drift, 1e-6});
  }
  o.note = "CFL 0.25 means dt = 0.25 / sum_a (1/h_a)";
  return o;
}

// ---------------------------------------------------------------- 5
struct LiftMax {
  double xy = 0.0;
  double z = 0.0;
  double h = 0.0;
};

LiftMax lift_run(const phs::Model& model, phs::State s, int steps, int every) {
  const contact::Lift lift(model);
  const double dt = phs::cfl_dt(*model.mesh(), 0.25);
  LiftMax r;
  for (int k = 1; k <= steps; ++k) {
    s = model.step(s, dt, phs::Scheme::rk4);
    if (k % every != 0) continue;
    const contact::LiftReport rep = lift.verify(s);
    r.xy = std::max({r.xy, rep.max_res_x, rep.max_res_y});
    r.z = std::max(r.z, rep.max_res_z);
    r.h = std::max(r.h, rep.max_h_psi);
  }
  return r;
}

Outcome contact_lift() {
  Outcome o;
  for (const phs::Preset p : kPresets) {
    const auto m = preset_mesh(p);
    const phs::Setup setup = phs::make_preset(p, m, {});
    const phs::Model model(m, phs::signature_of(p), setup.spec, phs::BoundaryMode::reflecting);
    const LiftMax r = lift_run(model, setup.state, 500, 10);
    const std::string name = phs::to_string(p) + " " + phs::signature_of(p).label();
    o.items.push_back({name + " x/y-dot residual", r.xy, 1e-10});
    o.items.push_back({name + " z-dot identity", r.z, 1e-8});
    o.items.push_back({name + " |h_psi| at every cell", r.h, 1e-12});
  }
  // Non-quadratic energy in 1D with open ends: psi = 1/2 (x_p^2 + x_q^2) + 1/4 (x_p^4 + 2 x_q^4).
  const auto m = box({64}, {1.0});
  const auto psi = std::make_shared<const PolynomialDensity>(2, std::vector<double>{1.0, 0.0, 0.0, 1.0},
                                                             std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 2.0});
  phs::InitialCondition ic;
  ic.kind = phs::InitialCondition::Kind::pulse;
  ic.center = 0.5;
  ic.width = 0.1;
  const phs::Setup setup = phs::make_preset(phs::Preset::telegraph1d, m, ic, phs::EnergySpec::pointwise(psi));
  const phs::Model model(m, {1, 1, 1}, setup.spec, phs::BoundaryMode::open);
  const LiftMax r = lift_run(model, setup.state, 500, 10);
  o.items.push_back({"telegraph1d quartic energy, open ends: x/y-dot", r.xy, 1e-10});
  o.items.push_back({"telegraph1d quartic energy, open ends: z-dot", r.z, 1e-8});
  o.items.push_back({"telegraph1d quartic energy, open ends: |h_psi|", r.h, 1e-12});
  return o;
}

// ---------------------------------------------------------------- 6
// h = a + b.u + 1/2 u.C u + d x0 y0 z over u = (x, y, z).
struct PolyH {
  std::size_t dim;
  double a;
  std::vector<double> b;
  std::vector<double> c;
  double d;

  std::vector<double> flat(const contact::ContactPoint& pt) const {
    std::vector<double> u(pt.x);
    u.insert(u.end(), pt.y.begin(), pt.y.end());
    u.push_back(pt.z);
    return u;
  }
  double value(const contact::ContactPoint& pt) const {
    const auto u = flat(pt);
    const std::size_t s = u.size();
    double h = a + d * u[0] * u[dim] * u[2 * dim];
    for (std::size_t i = 0; i < s; ++i) {
      h += b[i] * u[i];
      for (std::size_t j = 0; j < s; ++j) h += 0.5 * c[i * s + j] * u[i] * u[j];
    }
    return h;
  }
  contact::HamiltonianJet jet(const contact::ContactPoint& pt) const {
    const auto u = flat(pt);
    const std::size_t s = u.size();
    std::vector<double> g(b);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) g[i] += c[i * s + j] * u[j];
    }
    g[0] += d * u[dim] * u[2 * dim];
    g[dim] += d * u[0] * u[2 * dim];
    g[2 * dim] += d * u[0] * u[dim];
    const auto mid = g.begin() + static_cast<long>(dim);
    return {value(pt), {g.begin(), mid}, {mid, mid + static_cast<long>(dim)}, g[2 * dim]};
  }
};

Outcome contact_identities() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Outcome o;
  double fd_worst = 0.0;
  const double eps = 1e-5;
  for (int draw = 0; draw < 100; ++draw) {
    const std::size_t dim = 1 + static_cast<std::size_t>(draw % 4);
    const std::size_t s = 2 * dim + 1;
    PolyH h{dim, u(rng), random_vector(s, rng), std::vector<double>(s * s), u(rng)};
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j <= i; ++j) h.c[i * s + j] = h.c[j * s + i] = u(rng);
    }
    const contact::ContactPoint pt{random_vector(dim, rng), random_vector(dim, rng), u(rng)};
    const contact::HamiltonianJet j = h.jet(pt);
    const contact::Tangent v = contact::contact_field(j, pt);
    auto moved = [&](double t) {
      contact::ContactPoint q = pt;
      for (std::size_t a = 0; a < dim; ++a) {
        q.x[a] += t * v.x[a];
        q.y[a] += t * v.y[a];
      }
      q.z += t * v.z;
      return h.value(q);
    };
    // Fourth-order central difference of h along X_h; R h = dh/dz.
    const double fd = (-moved(2 * eps) + 8 * moved(eps) - 8 * moved(-eps) + moved(-2 * eps)) / (12 * eps);
    fd_worst = std::max(fd_worst, std::abs(fd - j.dz * j.value));
  }
  o.items.push_back({"X_h h - (R h) h, 100 random (h, point) draws", fd_worst, 1e-8});

  double y_worst = 0.0;
  double z_worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const std::size_t dim = 1 + static_cast<std::size_t>(draw % 4);
    std::vector<double> a(dim * dim), c(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k <= i; ++k) a[i * dim + k] = a[k * dim + i] = u(rng);
      a[i * dim + i] += 2.0 * static_cast<double>(dim);
      c[i] = 0.5 * (u(rng) + 1.0);
    }
    const auto psi = std::make_shared<const PolynomialDensity>(dim, a, random_vector(dim, rng), c);
    const std::vector<double> x = random_vector(dim, rng);
    const contact::ContactHamiltonianSpec spec{psi, random_vector(dim, rng), {0.3 + 0.05 * draw}};
    const contact::Tangent t = contact::restricted_field(spec, contact::legendre_point(*psi, x));
    // Hessian and gradient evaluated by hand from the polynomial coefficients.
    for (std::size_t i = 0; i < dim; ++i) {
      double hx = 3.0 * c[i] * x[i] * x[i] * t.x[i];
      for (std::size_t k = 0; k < dim; ++k) hx += a[i * dim + k] * t.x[k];
      y_worst = std::max(y_worst, std::abs(t.y[i] - hx));
    }
    double gx = 0.0;
    const std::vector<double> lin = psi->grad(std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) {
      double g = lin[i] + c[i] * x[i] * x[i] * x[i];
      for (std::size_t k = 0; k < dim; ++k) g += a[i * dim + k] * x[k];
      gx += g * t.x[i];
    }
    z_worst = std::max(z_worst, std::abs(t.z - gx));
  }
  o.items.push_back({"restricted field: y-dot - Hess psi x-dot", y_worst, 1e-12});
  o.items.push_back({"restricted field: z-dot - grad psi . x-dot", z_worst, 1e-12});
  return o;
}

// ---------------------------------------------------------------- 7
DensityPtr quadratic2() {
  return std::make_shared<const PolynomialDensity>(2, std::vector<double>{2.0, 0.5, 0.5, 1.0},
                                                   std::vector<double>{0.1, -0.2}, std::vector<double>{0.0, 0.0});
}

DensityPtr quartic2() {
  return std::make_shared<const PolynomialDensity>(2, std::vector<double>{1.0, 0.3, 0.3, 1.5},
                                                   std::vector<double>{0.0, 0.1}, std::vector<double>{1.0, 0.5});
}

Outcome legendre_battery() {
  std::mt19937_64 rng(7);
  Outcome o;
  const std::pair<std::string, DensityPtr> cases[] = {{"quadratic", quadratic2()}, {"quartic", quartic2()}};
  for (const auto& [name, psi] : cases) {
    const auto phi = std::make_shared<const infogeo::LegendreDual>(psi, infogeo::SearchBox::cube(2, 10.0));
    infogeo::SearchBox ybox = infogeo::SearchBox::cube(2, 20.0);
    ybox.gradient_tolerance = 1e-10;
    double bic = 0.0;
    double inv = 0.0;
    double hp = 0.0;
    for (int i = 0; i < 10; ++i) {
      const std::vector<double> x = random_vector(2, rng, 1.2);
      bic = std::max(bic, std::abs(infogeo::legendre_transform(*phi, x, ybox).value - psi->value(x)));
      const std::vector<double> back = phi->grad(psi->grad(x));
      inv = std::max({inv, std::abs(back[0] - x[0]), std::abs(back[1] - x[1])});
      const infogeo::Matrix prod = infogeo::fiber_metric(*psi, x) * infogeo::Matrix{2, phi->hess(psi->grad(x))};
      hp = std::max(hp, infogeo::max_abs_diff(prod, infogeo::Matrix::identity(2)));
    }
    o.items.push_back({name + ": biconjugation |phi*(x) - psi(x)|", bic, 1e-9});
    o.items.push_back({name + ": |grad phi(grad psi(x)) - x|", inv, 1e-10});
    o.items.push_back({name + ": |Hess psi Hess phi - I|", hp, 1e-10});
  }
  return o;
}

// ---------------------------------------------------------------- 8
// g(x) dx/dy - I with dx/dy from Richardson-extrapolated differences of grad phi.
double pairing_residual(const density::Density& psi, const density::Density& phi, const std::vector<double>& x) {
  const std::size_t n = x.size();
  const std::vector<double> g = psi.hess(x);
  const std::vector<double> y = psi.grad(x);
  auto column = [&](std::size_t a, double h) {
    std::vector<double> hi = y, lo = y;
    hi[a] += h;
    lo[a] -= h;
    std::vector<double> d = phi.grad(hi);
    const std::vector<double> dl = phi.grad(lo);
    for (std::size_t j = 0; j < n; ++j) d[j] = (d[j] - dl[j]) / (2 * h);
    return d;
  };
  double worst = 0.0;
  std::vector<double> jac(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto coarse = column(a, 1e-3);
    const auto fine = column(a, 5e-4);
    for (std::size_t j = 0; j < n; ++j) jac[j * n + a] = (4 * fine[j] - coarse[j]) / 3;
  }
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += g[b * n + j] * jac[j * n + a];
      worst = std::max(worst, std::abs(v - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

Outcome information_geometry() {
  std::mt19937_64 rng(8);
  Outcome o;
  const DensityPtr psi = quartic2();
  const auto phi = std::make_shared<const infogeo::LegendreDual>(psi, infogeo::SearchBox::cube(2, 10.0));
  const infogeo::DuallyFlatChart chart(psi, phi);

  double pairing = 0.0;
  double conn = 0.0;
  for (int i = 0; i < 10; ++i) {
    const std::vector<double> x = random_vector(2, rng, 1.2);
    pairing = std::max(pairing, pairing_residual(*psi, *phi, x));
    // d_a g_bc by central differences of the analytic metric.
    const double alpha = 0.7;
    const auto plus = infogeo::alpha_connection(*psi, x, alpha);
    const auto minus = infogeo::alpha_connection(*psi, x, -alpha);
    for (std::size_t a = 0; a < 2; ++a) {
      std::vector<double> hi = x, lo = x;
      hi[a] += 1e-3;
      lo[a] -= 1e-3;
      const auto gh = psi->hess(hi);
      const auto gl = psi->hess(lo);
      for (std::size_t b = 0; b < 2; ++b) {
        for (std::size_t c = 0; c < 2; ++c) {
          const double dg = (gh[b * 2 + c] - gl[b * 2 + c]) / 2e-3;
          conn = std::max(conn, std::abs(dg - plus[(a * 2 + b) * 2 + c] - minus[(a * 2 + c) * 2 + b]));
        }
      }
    }
  }
  o.items.push_back({"duality pairing |g dx/dy - delta|", pairing, 1e-8});
  o.items.push_back({"alpha-connection identity d g = G(a) + G(-a)", conn, 1e-10});

  double negative = 0.0;
  double diagonal = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> a = random_vector(2, rng, 1.5);
    const std::vector<double> b = random_vector(2, rng, 1.5);
    negative = std::max(negative, -infogeo::canonical_divergence(chart, a, b));
    diagonal = std::max(diagonal, std::abs(infogeo::canonical_divergence(chart, a, a)));
  }
  o.items.push_back({"divergence: max(-D) over 1000 random pairs", std::max(0.0, negative), 0.0});
  o.items.push_back({"divergence: max |D(xi||xi)| over 1000 samples", diagonal, 1e-12});

  const auto unit = std::make_shared<const PolynomialDensity>(PolynomialDensity::diagonal({1.0, 1.0}));
  const infogeo::DuallyFlatChart quad(unit, infogeo::SearchBox::cube(2, 10.0));
  const std::vector<double> x1{0.0, 0.0}, x2{1.0, 0.0}, x3{1.0, 1.0};
  o.items.push_back({"quadratic triple: |D(x3||x1) - 1.0|", std::abs(infogeo::canonical_divergence(quad, x3, x1) - 1.0),
                     1e-10});
  o.items.push_back({"quadratic triple: |D(x3||x2) - 0.5|", std::abs(infogeo::canonical_divergence(quad, x3, x2) - 0.5),
                     1e-10});
  o.items.push_back({"quadratic triple: |D(x2||x1) - 0.5|", std::abs(infogeo::canonical_divergence(quad, x2, x1) - 0.5),
                     1e-10});
  o.items.push_back({"quadratic triple: Pythagorean residual", infogeo::pythagoras_check(quad, x1, x2, x3), 1e-10});

  const auto sep = std::make_shared<const PolynomialDensity>(2, std::vector<double>{0.5, 0.0, 0.0, 2.0},
                                                             std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 0.7});
  const infogeo::DuallyFlatChart qs(sep, infogeo::SearchBox::cube(2, 10.0));
  const std::vector<double> q1{0.3, 0.5}, q2{1.2, 0.5}, q3{1.2, -0.4};
  const double direct = std::abs(infogeo::canonical_divergence(qs, q3, q1) - infogeo::canonical_divergence(qs, q3, q2) -
                                 infogeo::canonical_divergence(qs, q2, q1));
  o.items.push_back({"quartic separable triple: three-divergence residual", direct, 1e-9});
  o.items.push_back({"quartic separable triple: pythagoras_check", infogeo::pythagoras_check(qs, q1, q2, q3), 1e-9});
  return o;
}

// ---------------------------------------------------------------- 9
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "diraclab_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream cfg(root / "scenario.ini");
    cfg << "[scenario]\nname = det\npreset = wave2d\nseed = 7\n[mesh]\ncells = 16\n[time]\nsteps = 200\n"
           "[output]\nsnapshot_every = 50\n[verify]\nstokes_dirac = true\nlift = true\ninfogeo = true\n";
  }
  const std::vector<std::string> runs{"a", "b", "c"};
  for (const std::string& r : runs) {
    // Third run on a single thread: output must not depend on the worker count.
    const std::string env = r == "c" ? "DIRAC_LAB_THREADS=1 " : "";
    const std::string cmd = "cd '" + root.string() + "' && " + env + "'" + DIRACLAB_CLI +
                            "' run --config scenario.ini --out " + r + " > " + r + ".log 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) throw std::runtime_error("run " + r + " did not exit 0");
  }
  double mismatches = 0.0;
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(root / "a" / "det")) {
    const fs::path name = entry.path().filename();
    ++files;
    for (const std::string& r : {"b", "c"}) {
      if (slurp(entry.path()) != slurp(root / r / "det" / name)) mismatches += 1.0;
    }
  }
  o.items.push_back({"files differing between repeated runs", mismatches, 0.0});
  o.note = std::to_string(files) + " output files compared across 3 runs (one single-threaded)";
  if (files < 5) throw std::runtime_error("expected CSV and snapshot output");
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  failed += !criterion(1, "Hodge lemma battery", 1.0, hodge_battery);
  failed += !criterion(2, "discrete Stokes theorem", 1.0, stokes_theorem);
  failed += !criterion(3, "Stokes-Dirac isotropy and dimension count", 5.0, isotropy);
  failed += !criterion(4, "power balance and energy drift", 60.0, power_balance);
  failed += !criterion(5, "contact lift on all signatures", 60.0, contact_lift);
  failed += !criterion(6, "contact identities", 2.0, contact_identities);
  failed += !criterion(7, "Legendre battery", 2.0, legendre_battery);
  failed += !criterion(8, "information geometry", 5.0, information_geometry);
  failed += !criterion(9, "determinism of run output", 60.0, determinism);
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
