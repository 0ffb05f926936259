#include "diraclab/phs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diraclab::phs {

using forms::Grid;

EnergySpec EnergySpec::quadratic(double weight_p, double weight_q) {
  if (!(weight_p > 0.0) || !(weight_q > 0.0)) throw std::invalid_argument("energy weights must be positive");
  EnergySpec s;
  s.weight_p = weight_p;
  s.weight_q = weight_q;
  return s;
}

EnergySpec EnergySpec::pointwise(density::DensityPtr psi) {
  if (!psi || psi->dim() != 2) throw std::invalid_argument("pointwise energy needs a density of (x_p, x_q)");
  EnergySpec s;
  s.kind = Kind::density;
  s.density = std::move(psi);
  return s;
}

namespace {

int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

density::DensityPtr EnergySpec::fiber_density(const Signature& s) const {
  if (kind == Kind::density) return density;
  std::vector<double> w;
  w.insert(w.end(), static_cast<std::size_t>(binomial(s.n, s.p)), weight_p);
  w.insert(w.end(), static_cast<std::size_t>(binomial(s.n, s.q)), weight_q);
  return std::make_shared<const density::PolynomialDensity>(density::PolynomialDensity::diagonal(std::move(w)));
}

BoundaryMode parse_boundary_mode(const std::string& name) {
  if (name == "reflecting") return BoundaryMode::reflecting;
  if (name == "open") return BoundaryMode::open;
  throw std::invalid_argument("unknown boundary mode '" + name + "'");
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "midpoint") return Scheme::midpoint;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(BoundaryMode m) { return m == BoundaryMode::reflecting ? "reflecting" : "open"; }
std::string to_string(Scheme s) { return s == Scheme::rk4 ? "rk4" : "midpoint"; }

Model::Model(mesh::MeshPtr mesh, Signature signature, EnergySpec spec, BoundaryMode mode, Exec exec)
    : mesh_(std::move(mesh)), signature_(signature), spec_(std::move(spec)), mode_(mode), exec_(exec) {
  if (!mesh_) throw std::invalid_argument("model needs a mesh");
  signature_.validate();
  if (signature_.n != mesh_->dim()) throw std::invalid_argument("signature dimension does not match the mesh");
  if (spec_.kind == EnergySpec::Kind::density) {
    if (signature_.n != 1) throw std::invalid_argument("pointwise energy densities are supported on 1D meshes only");
    if (!spec_.density || spec_.density->dim() != 2) throw std::invalid_argument("1D density must depend on (x_p, x_q)");
  }
  boundary_ = std::make_shared<const mesh::BoundaryMesh>(mesh_);
  if (mode_ == BoundaryMode::reflecting) {
    for (const auto& bc : boundary_->cells(signature_.p - 1)) clamped_.push_back(bc.parent);
  }
}

void Model::check(const State& s) const {
  if (!(s.signature == signature_)) throw std::invalid_argument("state signature does not match the model");
  if (s.alpha_p.mesh_ptr() != mesh_ || s.alpha_q.mesh_ptr() != mesh_) {
    throw std::invalid_argument("state lives on a different mesh");
  }
  if (s.alpha_p.degree() != signature_.p || s.alpha_p.grid() != Grid::primal ||
      s.alpha_q.degree() != signature_.q || s.alpha_q.grid() != Grid::dual) {
    throw std::invalid_argument("state cochains do not match the signature");
  }
}

State Model::zero_state() const {
  return State{signature_, Cochain(mesh_, signature_.p, Grid::primal), Cochain(mesh_, signature_.q, Grid::dual), 0.0};
}

namespace {

// Corner quadrature on an interval: each cell contributes psi at its two
// corners, each with half the cell length. The x_p coordinate is constant on
// a cell, x_q is the vertex value.
struct CornerSample {
  double x_p;
  double x_q;
};

CornerSample corner_sample(const mesh::Mesh& m, const State& s, std::size_t cell, std::size_t vertex) {
  const double h = m.spacing(0);
  return {s.alpha_p[cell] / h, s.alpha_q[vertex] / m.dual_measure(m.cell(0, vertex))};
}

}  // namespace

double Model::energy(const State& s) const {
  check(s);
  if (spec_.kind == EnergySpec::Kind::quadratic) {
    const double ep = forms::pair_complementary(forms::hodge(s.alpha_p, exec_), s.alpha_p);
    const double eq = forms::pair_complementary(forms::hodge(s.alpha_q, exec_), s.alpha_q);
    return 0.5 * (spec_.weight_p * ep + spec_.weight_q * eq);
  }
  const mesh::Mesh& m = *mesh_;
  const double half = 0.5 * m.spacing(0);
  double e = 0.0;
  for (std::size_t c = 0; c < s.alpha_p.size(); ++c) {
    for (std::size_t v = c; v <= c + 1; ++v) {
      const CornerSample x = corner_sample(m, s, c, v);
      const double pt[2] = {x.x_p, x.x_q};
      e += spec_.density->value(pt) * half;
    }
  }
  return e;
}

Efforts Model::effort(const State& s) const {
  check(s);
  Efforts e{spec_.weight_p * forms::hodge_inverse(s.alpha_p, exec_),
            spec_.weight_q * forms::hodge_inverse(s.alpha_q, exec_)};
  if (spec_.kind == EnergySpec::Kind::density) {
    const mesh::Mesh& m = *mesh_;
    const double half = 0.5 * m.spacing(0);
    e.e_p *= 0.0;
    e.e_q *= 0.0;
    double g[2];
    for (std::size_t c = 0; c < s.alpha_p.size(); ++c) {
      for (std::size_t v = c; v <= c + 1; ++v) {
        const CornerSample x = corner_sample(m, s, c, v);
        const double pt[2] = {x.x_p, x.x_q};
        spec_.density->gradient(pt, g);
        e.e_p[c] += 0.5 * g[0];
        e.e_q[v] += g[1] * half / m.dual_measure(m.cell(0, v));
      }
    }
  }
  for (std::size_t i : clamped_) e.e_q[i] = 0.0;
  return e;
}

Rates Model::rhs_from(const Efforts& e) const {
  Rates r{-signature_.r_sign() * forms::exterior_derivative(e.e_q, exec_),
          -1.0 * forms::exterior_derivative(e.e_p, exec_)};
  for (std::size_t i : clamped_) r.dalpha_q[i] = 0.0;
  return r;
}

Rates Model::rhs(const State& s) const { return rhs_from(effort(s)); }

Efforts Model::effort_rate(const State& s, const Rates& r) const {
  check(s);
  Efforts de{spec_.weight_p * forms::hodge_inverse(r.dalpha_p, exec_),
             spec_.weight_q * forms::hodge_inverse(r.dalpha_q, exec_)};
  if (spec_.kind == EnergySpec::Kind::density) {
    const mesh::Mesh& m = *mesh_;
    const double half = 0.5 * m.spacing(0);
    de.e_p *= 0.0;
    de.e_q *= 0.0;
    const State rate{signature_, r.dalpha_p, r.dalpha_q, s.time};
    double hess[4];
    for (std::size_t c = 0; c < s.alpha_p.size(); ++c) {
      for (std::size_t v = c; v <= c + 1; ++v) {
        const CornerSample x = corner_sample(m, s, c, v);
        const CornerSample dx = corner_sample(m, rate, c, v);
        const double pt[2] = {x.x_p, x.x_q};
        spec_.density->hessian(pt, hess);
        de.e_p[c] += 0.5 * (hess[0] * dx.x_p + hess[1] * dx.x_q);
        de.e_q[v] += (hess[2] * dx.x_p + hess[3] * dx.x_q) * half / m.dual_measure(m.cell(0, v));
      }
    }
  }
  for (std::size_t i : clamped_) de.e_q[i] = 0.0;
  return de;
}

State Model::advance(const State& s, const Rates& r, double dt) const {
  State out = s;
  out.alpha_p += dt * r.dalpha_p;
  out.alpha_q += dt * r.dalpha_q;
  return out;
}

State Model::step(const State& s, double dt, Scheme scheme) const {
  check(s);
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (scheme == Scheme::midpoint) {
    const Rates k1 = rhs(s);
    const Rates k2 = rhs(advance(s, k1, 0.5 * dt));
    State out = advance(s, k2, dt);
    out.time = s.time + dt;
    return out;
  }
  const Rates k1 = rhs(s);
  const Rates k2 = rhs(advance(s, k1, 0.5 * dt));
  const Rates k3 = rhs(advance(s, k2, 0.5 * dt));
  const Rates k4 = rhs(advance(s, k3, dt));
  Rates sum{k1.dalpha_p + 2.0 * k2.dalpha_p + 2.0 * k3.dalpha_p + k4.dalpha_p,
            k1.dalpha_q + 2.0 * k2.dalpha_q + 2.0 * k3.dalpha_q + k4.dalpha_q};
  State out = advance(s, sum, dt / 6.0);
  out.time = s.time + dt;
  return out;
}

PowerBalanceReport Model::power_balance(const State& s) const {
  const Efforts e = effort(s);
  const Rates r = rhs_from(e);
  PowerBalanceReport out;
  out.time = s.time;
  out.energy = energy(s);
  out.dE_dt = forms::wedge_integral(e.e_p, r.dalpha_p) + forms::wedge_integral(e.e_q, r.dalpha_q);
  out.boundary_flux = forms::boundary_wedge_integral(stokes_dirac::boundary_effort(e.e_q, signature_, boundary_),
                                                     forms::trace_boundary(e.e_p, boundary_));
  out.residual = std::abs(out.dE_dt - out.boundary_flux);
  const double scale = std::max({std::abs(out.energy), std::abs(out.dE_dt), std::abs(out.boundary_flux)});
  out.relative_residual = scale > 0.0 ? out.residual / scale : 0.0;
  return out;
}

double cfl_dt(const mesh::Mesh& m, double courant) {
  if (!(courant > 0.0)) throw std::invalid_argument("Courant number must be positive");
  double inv = 0.0;
  for (int a = 0; a < m.dim(); ++a) inv += 1.0 / m.spacing(a);
  return courant / inv;
}

Preset parse_preset(const std::string& name) {
  if (name == "telegraph1d") return Preset::telegraph1d;
  if (name == "wave2d") return Preset::wave2d;
  if (name == "maxwell3d_pq22") return Preset::maxwell3d_pq22;
  if (name == "em3d_p1q3") return Preset::em3d_p1q3;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::telegraph1d: return "telegraph1d";
    case Preset::wave2d: return "wave2d";
    case Preset::maxwell3d_pq22: return "maxwell3d_pq22";
    case Preset::em3d_p1q3: return "em3d_p1q3";
  }
  return "unknown";
}

Signature signature_of(Preset p) {
  switch (p) {
    case Preset::telegraph1d: return {1, 1, 1};
    case Preset::wave2d: return {2, 1, 2};
    case Preset::maxwell3d_pq22: return {3, 2, 2};
    case Preset::em3d_p1q3: return {3, 1, 3};
  }
  throw std::invalid_argument("unknown preset");
}

int dimension_of(Preset p) { return signature_of(p).n; }

InitialCondition::Kind parse_initial_kind(const std::string& name) {
  if (name == "standing_wave") return InitialCondition::Kind::standing_wave;
  if (name == "pulse") return InitialCondition::Kind::pulse;
  if (name == "zero") return InitialCondition::Kind::zero;
  throw std::invalid_argument("unknown initial condition '" + name + "'");
}

Cochain sample(const mesh::MeshPtr& m, int degree, Grid grid, const ComponentFn& fn) {
  Cochain c(m, degree, grid);
  const int carrier = c.carrier_degree();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const mesh::CellRef cell = m->cell(carrier, i);
    const auto x = m->center(cell);
    const double meas = grid == Grid::primal ? m->primal_measure(cell.axes) : m->dual_measure(cell);
    c[i] = fn(c.form_axes(i), std::span<const double>(x.data(), static_cast<std::size_t>(m->dim()))) * meas;
  }
  return c;
}

Setup make_preset(Preset p, const mesh::MeshPtr& m, const InitialCondition& ic, EnergySpec spec) {
  const Signature s = signature_of(p);
  if (!m || m->dim() != s.n) {
    throw std::invalid_argument("preset " + to_string(p) + " needs a " + std::to_string(s.n) + "D mesh");
  }
  const int n = m->dim();
  const double amp = ic.amplitude;
  const double k = ic.mode * std::numbers::pi;

  auto standing = [&](std::span<const double> x) {
    double v = amp;
    for (int a = 0; a < (n == 3 && p == Preset::maxwell3d_pq22 ? 2 : n); ++a) {
      v *= std::sin(k * x[static_cast<std::size_t>(a)] / m->length(a));
    }
    return v;
  };
  auto pulse = [&](std::span<const double> x) {
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double d = (x[static_cast<std::size_t>(a)] / m->length(a)) - ic.center;
      r2 += d * d;
    }
    return amp * std::exp(-r2 / (2.0 * ic.width * ic.width));
  };
  auto profile = [&](std::span<const double> x) {
    switch (ic.kind) {
      case InitialCondition::Kind::standing_wave: return standing(x);
      case InitialCondition::Kind::pulse: return pulse(x);
      case InitialCondition::Kind::zero: break;
    }
    return 0.0;
  };

  // Only the z-component of a 1-form effort is excited in the Maxwell case.
  const mesh::AxisMask excited = (p == Preset::maxwell3d_pq22) ? mesh::AxisMask{0b100} : mesh::AxisMask{0};
  Cochain e_q = sample(m, n - s.q, Grid::primal, [&](mesh::AxisMask axes, std::span<const double> x) {
    return axes == excited ? profile(x) : 0.0;
  });
  Cochain e_p(m, n - s.p, Grid::dual);
  if (ic.kind == InitialCondition::Kind::pulse && p == Preset::telegraph1d) {
    // Right-moving pulse: equal efforts on both energy variables.
    e_p = sample(m, 0, Grid::dual, [&](mesh::AxisMask, std::span<const double> x) { return pulse(x); });
  }
  const double wp = spec.kind == EnergySpec::Kind::quadratic ? spec.weight_p : 1.0;
  const double wq = spec.kind == EnergySpec::Kind::quadratic ? spec.weight_q : 1.0;
  State state{s, (1.0 / wp) * forms::hodge(e_p), (1.0 / wq) * forms::hodge(e_q), 0.0};
  return Setup{std::move(state), std::move(spec)};
}

}  // namespace diraclab::phs
