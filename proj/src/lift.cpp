#include "diraclab/lift.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace diraclab::contact {

using forms::Cochain;
using forms::Grid;
using mesh::AxisMask;

namespace {

// Block degrees of the efforts: e_p is an (n-p)-form, e_q an (n-q)-form.
int effort_degree(const phs::Signature& s, int block) { return block == 0 ? s.n - s.p : s.n - s.q; }

void require_separable(const density::Density& psi, std::size_t dim_p) {
  const auto* poly = dynamic_cast<const density::PolynomialDensity*>(&psi);
  if (!poly) return;
  for (std::size_t i = 0; i < dim_p; ++i) {
    for (std::size_t j = dim_p; j < poly->dim(); ++j) {
      if (poly->quadratic(i, j) != 0.0) throw std::invalid_argument("lift needs an energy with no x_p-x_q coupling");
    }
  }
}

void update_max(double& m, double v) { m = std::max(m, std::abs(v)); }

}  // namespace

Lift::Lift(phs::Model model, LinearGamma gamma) : model_(std::move(model)), gamma_(gamma) {
  const phs::Signature& s = model_.signature();
  const bool known = (s.n == 1 && s.p == 1 && s.q == 1) || (s.n == 2 && s.p == 1 && s.q == 2) ||
                     (s.n == 3 && s.p == 2 && s.q == 2) || (s.n == 3 && s.p == 1 && s.q == 3);
  if (!known) throw std::invalid_argument("no contact lift for signature " + s.label());
  // Only the (3,1,3) p-block is listed through the star: x_p = alpha_p, y_p = star e_p.
  hodge_coords_[0] = s.n == 3 && s.p == 1;
  dim_p_ = exterior::num_components(s.n, s.p);
  dim_q_ = exterior::num_components(s.n, s.q);
  psi_ = model_.spec().fiber_density(s);
  if (psi_->dim() != fiber_dim()) throw std::invalid_argument("energy density does not match the fiber dimension");
  require_separable(*psi_, dim_p_);
}

exterior::PointForm Lift::to_coordinates(int block, const exterior::PointForm& f) const {
  return hodge_coords_[block] ? exterior::hodge(f) : f;
}

exterior::PointForm Lift::from_coordinates(int block, const exterior::PointForm& c) const {
  return hodge_coords_[block] ? exterior::hodge_inverse(c) : c;
}

void Lift::fill_block(int block, const Cochain& c, std::size_t cell, unsigned corner, std::vector<double>& out) const {
  const exterior::PointForm coords = to_coordinates(block, forms::corner_form(c, cell, corner));
  out.insert(out.end(), coords.comp.begin(), coords.comp.end());
}

LiftedState Lift::lift_state(const phs::State& s) const { return lift_state(s, model_.effort(s)); }

LiftedState Lift::lift_state(const phs::State& s, const phs::Efforts& e) const {
  const phs::Signature& sig = model_.signature();
  const int n = sig.n;
  const Cochain xi_p = forms::hodge_inverse(s.alpha_p, model_.exec());
  const Cochain xi_q = forms::hodge_inverse(s.alpha_q, model_.exec());
  // Drift forms F^p = (-1)^r d e_q and F^q = d e_p.
  const Cochain drift_p = sig.r_sign() * forms::exterior_derivative(e.e_q, model_.exec());
  Cochain drift_q = forms::exterior_derivative(e.e_p, model_.exec());
  for (std::size_t i : model_.clamped()) drift_q[i] = 0.0;

  // Unit adapted forms of each block, in effort degree.
  std::vector<exterior::PointForm> units[2];
  for (int b = 0; b < 2; ++b) {
    const int deg = effort_degree(sig, b);
    const int coord_deg = hodge_coords_[b] ? n - deg : deg;
    for (std::size_t a = 0; a < exterior::num_components(n, coord_deg); ++a) {
      exterior::PointForm u = exterior::zero_form(n, coord_deg);
      u.comp[a] = 1.0;
      units[b].push_back(from_coordinates(b, u));
    }
  }

  LiftedState ls;
  ls.cells = model_.mesh()->count(n);
  ls.corners = corners();
  ls.points.resize(ls.cells * ls.corners);
  const bool par = model_.exec() == forms::Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::size_t cell = 0; cell < ls.cells; ++cell) {
    for (unsigned corner = 0; corner < ls.corners; ++corner) {
      LiftedPoint& lp = ls.at(cell, corner);
      fill_block(0, xi_p, cell, corner, lp.point.x);
      fill_block(1, xi_q, cell, corner, lp.point.x);
      fill_block(0, e.e_p, cell, corner, lp.point.y);
      fill_block(1, e.e_q, cell, corner, lp.point.y);
      lp.point.z = psi_->value(lp.point.x);
      const exterior::PointForm f[2] = {forms::corner_form(drift_p, cell, corner),
                                        forms::corner_form(drift_q, cell, corner)};
      for (int b = 0; b < 2; ++b) {
        for (const exterior::PointForm& u : units[b]) {
          lp.drift.push_back(-exterior::hodge_inverse(exterior::wedge(u, f[b])).comp[0]);
        }
      }
    }
  }
  return ls;
}

ContactHamiltonianSpec Lift::hamiltonian_spec(const LiftedPoint& lp) const {
  return ContactHamiltonianSpec{psi_, lp.drift, gamma_};
}

HamiltonianJet Lift::jet(const LiftedPoint& lp) const {
  return restricted_hamiltonian(hamiltonian_spec(lp), lp.point);
}

double Lift::hamiltonian_density(const LiftedState& ls, std::size_t cell) const {
  double best = 0.0;
  for (unsigned c = 0; c < ls.corners; ++c) {
    const double h = jet(ls.at(cell, c)).value;
    if (std::abs(h) > std::abs(best)) best = h;
  }
  return best;
}

LiftReport Lift::verify(const phs::State& s) const { return verify(s, model_.effort(s)); }

LiftReport Lift::verify(const phs::State& s, const phs::Efforts& e) const {
  const phs::Signature& sig = model_.signature();
  const mesh::Mesh& m = *model_.mesh();
  const int n = sig.n;
  const LiftedState ls = lift_state(s, e);
  const phs::Rates rates = model_.rhs(s);
  const phs::Efforts de = model_.effort_rate(s, rates);
  const Cochain xi_rate_p = forms::hodge_inverse(rates.dalpha_p, model_.exec());
  const Cochain xi_rate_q = forms::hodge_inverse(rates.dalpha_q, model_.exec());

  // W = e_p ^ e_q on primal (n-1)-cells: the face measure times the mean over
  // the face vertices of the pointwise wedge, each vertex averaged over the
  // one or two n-cells on either side of the face.
  Cochain w(model_.mesh(), n - 1, Grid::primal);
  const AxisMask all = m.all_axes();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const mesh::CellRef face = m.cell(n - 1, i);
    const AxisMask normal = all & ~face.axes;
    const int axis = std::countr_zero(normal);
    const std::size_t comp = exterior::component_index(n, face.axes);
    double sum = 0.0;
    int vertices = 0;
    for (AxisMask bits = face.axes;; bits = (bits - 1) & face.axes) {
      double v = 0.0;
      int sides = 0;
      for (int side = 0; side < 2; ++side) {
        mesh::Position base = face.base;
        base[static_cast<std::size_t>(axis)] -= side;
        if (!m.contains(all, base)) continue;
        const std::size_t cell = m.index(all, base);
        const unsigned corner = bits | (side ? normal : 0u);
        v += exterior::wedge(forms::corner_form(e.e_p, cell, corner), forms::corner_form(e.e_q, cell, corner)).comp[comp];
        ++sides;
      }
      sum += v / sides;
      ++vertices;
      if (bits == 0) break;
    }
    w[i] = m.primal_measure(face.axes) * sum / vertices;
  }
  const Cochain dw = forms::exterior_derivative(w, model_.exec());
  const double volume = m.primal_measure(all);

  LiftReport report;
  report.cells.resize(ls.cells);
  const bool par = model_.exec() == forms::Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::size_t cell = 0; cell < ls.cells; ++cell) {
    CellResidual& r = report.cells[cell];
    double zdot = 0.0;
    for (unsigned corner = 0; corner < ls.corners; ++corner) {
      const LiftedPoint& lp = ls.at(cell, corner);
      const HamiltonianJet j = jet(lp);
      const Tangent t = contact_field(j, lp.point);
      std::vector<double> xr;
      std::vector<double> yr;
      fill_block(0, xi_rate_p, cell, corner, xr);
      fill_block(1, xi_rate_q, cell, corner, xr);
      fill_block(0, de.e_p, cell, corner, yr);
      fill_block(1, de.e_q, cell, corner, yr);
      for (std::size_t a = 0; a < xr.size(); ++a) {
        update_max(r.res_x, t.x[a] - xr[a]);
        update_max(r.res_y, t.y[a] - yr[a]);
      }
      if (std::abs(j.value) > std::abs(r.h_psi)) r.h_psi = j.value;
      zdot += t.z;
    }
    zdot /= ls.corners;
    r.res_z = std::abs(zdot + dw[cell] / volume);
  }
  for (const CellResidual& r : report.cells) {
    update_max(report.max_res_x, r.res_x);
    update_max(report.max_res_y, r.res_y);
    update_max(report.max_res_z, r.res_z);
    update_max(report.max_h_psi, r.h_psi);
  }
  return report;
}

void write_lift_csv(std::ostream& os, const LiftReport& r) {
  os << "cell,res_x,res_y,res_z,h_psi\n";
  char buf[160];
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    const CellResidual& c = r.cells[i];
    std::snprintf(buf, sizeof buf, "%zu,%.6e,%.6e,%.6e,%.6e\n", i, c.res_x, c.res_y, c.res_z, c.h_psi);
    os << buf;
  }
}

}  // namespace diraclab::contact
