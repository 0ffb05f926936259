#include "diraclab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "diraclab/contact.hpp"
#include "diraclab/infogeo.hpp"
#include "diraclab/lift.hpp"
#include "diraclab/stokes_dirac.hpp"

namespace diraclab::verify {

namespace {

using forms::Cochain;
using forms::Grid;
using density::DensityPtr;
using density::PolynomialDensity;

mesh::MeshPtr small_mesh(int n) {
  const std::vector<int> cells{5, 4, 3};
  const std::vector<double> lengths{1.0, 0.7, 1.3};
  return mesh::make_mesh(n, std::span(cells).first(static_cast<std::size_t>(n)),
                         std::span(lengths).first(static_cast<std::size_t>(n)));
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

std::string dim_label(int n) { return std::to_string(n) + "D"; }

const std::vector<stokes_dirac::Signature>& signatures() {
  static const std::vector<stokes_dirac::Signature> s{{1, 1, 1}, {2, 1, 2}, {3, 2, 2}, {3, 1, 3}};
  return s;
}

const std::vector<phs::Preset>& presets() {
  static const std::vector<phs::Preset> p{phs::Preset::telegraph1d, phs::Preset::wave2d,
                                          phs::Preset::maxwell3d_pq22, phs::Preset::em3d_p1q3};
  return p;
}

std::vector<Check> hodge_suite() {
  std::vector<Check> rows;
  std::mt19937_64 rng(101);
  for (int n = 1; n <= 3; ++n) {
    const auto m = small_mesh(n);
    Check inv{"hodge involution " + dim_label(n), 0.0, 1e-12};
    Check pos{"hodge positivity " + dim_label(n), 0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
      for (Grid g : {Grid::primal, Grid::dual}) {
        const Cochain c = random_cochain(m, k, g, rng);
        const double sign = (n == 2 && k % 2 == 1) ? -1.0 : 1.0;
        inv.residual = std::max(inv.residual, forms::max_abs_diff(forms::hodge(forms::hodge(c)), sign * c));
        // The squared norm must be positive for a nonzero cochain.
        const double norm = forms::pair_complementary(forms::hodge(c), c);
        pos.residual = std::max(pos.residual, norm > 0.0 ? 0.0 : 1.0);
      }
    }
    rows.push_back(inv);
    rows.push_back(pos);
  }
  return rows;
}

std::vector<Check> stokes_suite() {
  std::vector<Check> rows;
  std::mt19937_64 rng(102);
  for (int n = 1; n <= 3; ++n) {
    const auto m = small_mesh(n);
    const auto b = std::make_shared<const mesh::BoundaryMesh>(mesh::boundary_complex(m));
    Check st{"discrete stokes theorem " + dim_label(n), 0.0, 1e-13};
    Check dd{"d(d c) = 0 " + dim_label(n), 0.0, 1e-13};
    for (int trial = 0; trial < 10; ++trial) {
      const Cochain c = random_cochain(m, n - 1, Grid::primal, rng);
      const double lhs = forms::integrate_top(forms::exterior_derivative(c));
      st.residual = std::max(st.residual, std::abs(lhs - forms::boundary_sum(forms::trace_boundary(c, b))));
      for (int k = 0; k + 2 <= n; ++k) {
        for (Grid g : {Grid::primal, Grid::dual}) {
          const Cochain a = random_cochain(m, k, g, rng);
          dd.residual = std::max(dd.residual, forms::max_abs(forms::exterior_derivative(forms::exterior_derivative(a))));
        }
      }
    }
    rows.push_back(st);
    rows.push_back(dd);
  }
  return rows;
}

std::vector<Check> dirac_suite() {
  std::vector<Check> rows;
  std::mt19937_64 rng(103);
  for (const auto& sig : signatures()) {
    const auto m = small_mesh(sig.n);
    const auto b = std::make_shared<const mesh::BoundaryMesh>(mesh::boundary_complex(m));
    Check iso{"isotropy " + sig.label(), 0.0, 1e-10};
    for (int pair = 0; pair < 100; ++pair) {
      const Cochain ep = random_cochain(m, sig.n - sig.p, Grid::dual, rng);
      const Cochain eq = random_cochain(m, sig.n - sig.q, Grid::primal, rng);
      const Cochain ep2 = random_cochain(m, sig.n - sig.p, Grid::dual, rng);
      const Cochain eq2 = random_cochain(m, sig.n - sig.q, Grid::primal, rng);
      iso.residual = std::max(iso.residual, stokes_dirac::check_isotropy(ep, eq, ep2, eq2, sig, b));
    }
    rows.push_back(iso);
  }
  {
    const std::vector<int> cells{8};
    const std::vector<double> len{1.0};
    const auto count = stokes_dirac::dimension_count(mesh::make_mesh(1, cells, len), {1, 1, 1});
    // D is contained in its orthogonal complement: the image pairs to zero with itself.
    const bool ok = count.complementary() && count.annihilator >= count.image;
    rows.push_back({"dimension count 1D (8 cells)", ok ? count.self_pairing : 1.0, 1e-10});
  }
  for (const phs::Preset p : presets()) {
    const int n = phs::dimension_of(p);
    const auto m = small_mesh(n);
    for (const phs::BoundaryMode mode : {phs::BoundaryMode::reflecting, phs::BoundaryMode::open}) {
      phs::InitialCondition ic;
      ic.kind = phs::InitialCondition::Kind::pulse;
      ic.width = 0.3;
      phs::Setup setup = phs::make_preset(p, m, ic);
      const phs::Model model(m, phs::signature_of(p), setup.spec, mode);
      for (std::size_t i : model.clamped()) setup.state.alpha_q[i] = 0.0;
      const phs::State s = model.step(setup.state, 0.5 * phs::cfl_dt(*m, 0.25), phs::Scheme::rk4);
      rows.push_back({"power balance " + phs::to_string(p) + " " + phs::to_string(mode),
                      model.power_balance(s).relative_residual, 1e-10});
    }
  }
  return rows;
}

// h(u) = a + b.u + 1/2 u.C u over u = (x, y, z), plus a cubic coupling d x0 y0 z.
struct PolyHamiltonian {
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

contact::ContactPoint shifted(const contact::ContactPoint& pt, double eps, const contact::Tangent& v) {
  contact::ContactPoint out = pt;
  for (std::size_t a = 0; a < pt.x.size(); ++a) {
    out.x[a] += eps * v.x[a];
    out.y[a] += eps * v.y[a];
  }
  out.z += eps * v.z;
  return out;
}

DensityPtr random_separable(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<double> a(dim * dim, 0.0), c(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    a[i * dim + i] = u(rng);
    c[i] = u(rng) - 0.5;
  }
  return std::make_shared<const PolynomialDensity>(dim, a, std::vector<double>(dim, 0.0), c);
}

std::vector<Check> contact_suite() {
  std::vector<Check> rows;
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  Check rh{"X_h h = (R h) h", 0.0, 1e-8};
  const double eps = 1e-6;
  for (int draw = 0; draw < 100; ++draw) {
    const std::size_t dim = 1 + static_cast<std::size_t>(draw % 3);
    const std::size_t s = 2 * dim + 1;
    PolyHamiltonian h{dim, u(rng), random_vector(s, rng), std::vector<double>(s * s), u(rng)};
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j <= i; ++j) h.c[i * s + j] = h.c[j * s + i] = u(rng);
    }
    const contact::ContactPoint pt{random_vector(dim, rng), random_vector(dim, rng), u(rng)};
    const contact::HamiltonianJet j = h.jet(pt);
    const contact::Tangent x = contact::contact_field(j, pt);
    const double fd = (h.value(shifted(pt, eps, x)) - h.value(shifted(pt, -eps, x))) / (2.0 * eps);
    rh.residual = std::max(rh.residual, std::abs(fd - j.dz * j.value));
  }
  rows.push_back(rh);

  Check ydot{"restricted field y-dot = Hess psi x-dot", 0.0, 1e-12};
  Check zdot{"restricted field z-dot = grad psi . x-dot", 0.0, 1e-12};
  for (int draw = 0; draw < 50; ++draw) {
    const std::size_t dim = 1 + static_cast<std::size_t>(draw % 4);
    const DensityPtr psi = random_separable(dim, rng);
    const std::vector<double> x = random_vector(dim, rng);
    const contact::ContactHamiltonianSpec spec{psi, random_vector(dim, rng), {0.5 + 0.1 * draw}};
    const contact::Tangent t = contact::restricted_field(spec, contact::legendre_point(*psi, x));
    const std::vector<double> hess = psi->hess(x);
    const std::vector<double> grad = psi->grad(x);
    double z = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      double ya = 0.0;
      for (std::size_t b = 0; b < dim; ++b) ya += hess[a * dim + b] * t.x[b];
      ydot.residual = std::max(ydot.residual, std::abs(t.y[a] - ya));
      z += grad[a] * t.x[a];
    }
    zdot.residual = std::max(zdot.residual, std::abs(t.z - z));
  }
  rows.push_back(ydot);
  rows.push_back(zdot);

  for (const phs::Preset p : presets()) {
    const auto m = small_mesh(phs::dimension_of(p));
    phs::Setup setup = phs::make_preset(p, m, {});
    const phs::Model model(m, phs::signature_of(p), setup.spec, phs::BoundaryMode::reflecting);
    const contact::Lift lift(model);
    phs::State s = setup.state;
    Check xy{"lift x/y-dot " + phs::to_string(p), 0.0, 1e-10};
    Check z{"lift z-dot identity " + phs::to_string(p), 0.0, 1e-8};
    Check h{"lift h_psi " + phs::to_string(p), 0.0, 1e-12};
    for (int step = 0; step < 3; ++step) {
      const contact::LiftReport r = lift.verify(s);
      xy.residual = std::max({xy.residual, r.max_res_x, r.max_res_y});
      z.residual = std::max(z.residual, r.max_res_z);
      h.residual = std::max(h.residual, r.max_h_psi);
      s = model.step(s, phs::cfl_dt(*m, 0.25), phs::Scheme::rk4);
    }
    rows.insert(rows.end(), {xy, z, h});
  }
  return rows;
}

// max |g(x) dx/dy - I| with dx/dy from Richardson-extrapolated central
// differences of grad phi.
double pairing_by_differences(const density::Density& psi, const density::Density& phi, const std::vector<double>& x) {
  const std::size_t n = x.size();
  const std::vector<double> g = psi.hess(x);
  const std::vector<double> y = psi.grad(x);
  auto column = [&](std::size_t a, double h) {
    std::vector<double> hi = y;
    std::vector<double> lo = y;
    hi[a] += h;
    lo[a] -= h;
    std::vector<double> d = phi.grad(hi);
    const std::vector<double> gl = phi.grad(lo);
    for (std::size_t j = 0; j < n; ++j) d[j] = (d[j] - gl[j]) / (2.0 * h);
    return d;
  };
  const double h = 1e-3;
  std::vector<double> jac(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::vector<double> coarse = column(a, h);
    const std::vector<double> fine = column(a, 0.5 * h);
    for (std::size_t j = 0; j < n; ++j) jac[j * n + a] = (4.0 * fine[j] - coarse[j]) / 3.0;
  }
  double worst = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += g[b * n + j] * jac[j * n + a];
      worst = std::max(worst, std::abs(v - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::vector<Check> infogeo_suite() {
  std::vector<Check> rows;
  std::mt19937_64 rng(105);
  const auto quad = std::make_shared<const PolynomialDensity>(PolynomialDensity::diagonal({1.0, 1.0}));
  const auto quartic = std::make_shared<const PolynomialDensity>(
      2, std::vector<double>{1.0, 0.0, 0.0, 1.0}, std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 1.0});
  const infogeo::SearchBox box = infogeo::SearchBox::cube(2, 10.0);

  Check bic{"legendre biconjugation", 0.0, 1e-9};
  Check inv{"grad phi o grad psi = id", 0.0, 1e-10};
  Check hp{"Hess psi Hess phi = I", 0.0, 1e-10};
  Check pairing{"duality pairing", 0.0, 1e-8};
  Check conn{"alpha-connection identity", 0.0, 1e-10};
  Check self{"divergence D(xi||xi)", 0.0, 1e-12};
  Check neg{"divergence negativity", 0.0, 0.0};
  for (const DensityPtr& psi : {DensityPtr(quad), DensityPtr(quartic)}) {
    const auto phi = std::make_shared<const infogeo::LegendreDual>(psi, box);
    const infogeo::DuallyFlatChart chart(psi, phi);
    infogeo::SearchBox ybox = infogeo::SearchBox::cube(2, 20.0);
    ybox.gradient_tolerance = 1e-10;
    for (int i = 0; i < 3; ++i) {
      const std::vector<double> x = random_vector(2, rng, 1.2);
      bic.residual = std::max(bic.residual, std::abs(infogeo::legendre_transform(*phi, x, ybox).value - psi->value(x)));
      const std::vector<double> back = phi->grad(psi->grad(x));
      for (std::size_t a = 0; a < 2; ++a) inv.residual = std::max(inv.residual, std::abs(back[a] - x[a]));
      hp.residual = std::max(hp.residual, infogeo::duality_pairing_check(chart, x));
      pairing.residual = std::max(pairing.residual, pairing_by_differences(*psi, *phi, x));
      conn.residual = std::max(conn.residual, infogeo::connection_identity_residual(*psi, x, 0.7));
    }
    for (int i = 0; i < 20; ++i) {
      const std::vector<double> a = random_vector(2, rng, 1.5);
      const std::vector<double> b = random_vector(2, rng, 1.5);
      self.residual = std::max(self.residual, std::abs(infogeo::canonical_divergence(chart, a, a)));
      neg.residual = std::max(neg.residual, -infogeo::canonical_divergence(chart, a, b));
    }
  }
  rows.insert(rows.end(), {bic, inv, hp, pairing, conn, self, neg});

  const infogeo::DuallyFlatChart qchart(quad, box);
  const std::vector<double> xi1{0.0, 0.0}, xi2{1.0, 0.0}, xi3{1.0, 1.0};
  rows.push_back({"pythagoras quadratic D = 1.0", std::abs(infogeo::canonical_divergence(qchart, xi3, xi1) - 1.0),
                  1e-10});
  rows.push_back({"pythagoras quadratic 1.0 = 0.5 + 0.5", infogeo::pythagoras_check(qchart, xi1, xi2, xi3), 1e-10});
  const infogeo::DuallyFlatChart qq(quartic, box);
  rows.push_back({"pythagoras quartic separable",
                  infogeo::pythagoras_check(qq, {0.3, 0.5}, {1.2, 0.5}, {1.2, -0.4}), 1e-9});
  return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hodge", "stokes", "dirac", "contact", "infogeo", "all"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<Check> run_suite(const std::string& name) {
  if (name == "hodge") return hodge_suite();
  if (name == "stokes") return stokes_suite();
  if (name == "dirac") return dirac_suite();
  if (name == "contact") return contact_suite();
  if (name == "infogeo") return infogeo_suite();
  if (name == "all") {
    std::vector<Check> rows;
    for (const auto& s : suite_names()) {
      if (s == "all") continue;
      auto part = run_suite(s);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace diraclab::verify
