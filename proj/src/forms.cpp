#include "diraclab/forms.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace diraclab::forms {

using mesh::AxisMask;
using mesh::CellRef;

char grid_tag(Grid g) { return g == Grid::primal ? 'p' : 'd'; }

Cochain::Cochain(MeshPtr mesh, int degree, Grid grid)
    : mesh_(std::move(mesh)), degree_(degree), grid_(grid) {
  if (!mesh_) throw std::invalid_argument("cochain needs a mesh");
  if (degree < 0 || degree > mesh_->dim()) {
    throw std::invalid_argument("cochain degree outside 0..n");
  }
  values_.assign(mesh_->count(carrier_degree()), 0.0);
}

Cochain::Cochain(MeshPtr mesh, int degree, Grid grid, std::vector<double> values)
    : Cochain(std::move(mesh), degree, grid) {
  if (values.size() != values_.size()) {
    throw std::invalid_argument("cochain value count does not match the cell count");
  }
  values_ = std::move(values);
}

int Cochain::carrier_degree() const {
  return grid_ == Grid::primal ? degree_ : mesh_->dim() - degree_;
}

AxisMask Cochain::form_axes(std::size_t i) const {
  const CellRef c = mesh_->cell(carrier_degree(), i);
  return grid_ == Grid::primal ? c.axes : (mesh_->all_axes() & ~c.axes);
}

bool Cochain::compatible(const Cochain& other) const {
  return mesh_ == other.mesh_ && degree_ == other.degree_ && grid_ == other.grid_;
}

Cochain& Cochain::operator+=(const Cochain& other) {
  if (!compatible(other)) throw std::invalid_argument("adding incompatible cochains");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
  if (!compatible(other)) throw std::invalid_argument("subtracting incompatible cochains");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Cochain& Cochain::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
Cochain operator*(double s, Cochain a) { return a *= s; }

double max_abs(const Cochain& c) {
  double m = 0.0;
  for (double v : c.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Cochain& a, const Cochain& b) {
  if (!a.compatible(b)) throw std::invalid_argument("comparing incompatible cochains");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

namespace {

void apply_incidence(const mesh::Incidence& inc, std::span<const double> in,
                     std::span<double> out, Exec exec) {
  const auto rows = static_cast<long>(inc.rows);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long r = 0; r < rows; ++r) {
      const auto ur = static_cast<std::size_t>(r);
      double s = 0.0;
      for (std::size_t e = inc.row_start[ur]; e < inc.row_start[ur + 1]; ++e) {
        s += inc.coeff[e] * in[inc.col[e]];
      }
      out[ur] = s;
    }
  } else {
    for (long r = 0; r < rows; ++r) {
      const auto ur = static_cast<std::size_t>(r);
      double s = 0.0;
      for (std::size_t e = inc.row_start[ur]; e < inc.row_start[ur + 1]; ++e) {
        s += inc.coeff[e] * in[inc.col[e]];
      }
      out[ur] = s;
    }
  }
}

double hodge_factor(const Mesh& m, const Cochain& c, std::size_t i) {
  const CellRef cell = m.cell(c.carrier_degree(), i);
  const AxisMask form = c.grid() == Grid::primal ? cell.axes : (m.all_axes() & ~cell.axes);
  const double primal = m.primal_measure(cell.axes);
  const double dual = m.dual_measure(cell);
  const double ratio = c.grid() == Grid::primal ? dual / primal : primal / dual;
  return exterior::hodge_sign(m.dim(), form) * ratio;
}

}  // namespace

Cochain exterior_derivative(const Cochain& c, Exec exec) {
  const Mesh& m = c.mesh();
  if (c.degree() >= m.dim()) throw std::domain_error("exterior derivative of a top-degree cochain");
  Cochain out(c.mesh_ptr(), c.degree() + 1, c.grid());
  const mesh::Incidence& inc =
      c.grid() == Grid::primal ? m.coboundary(c.degree()) : m.dual_coboundary(c.degree());
  apply_incidence(inc, c.values(), out.values(), exec);
  return out;
}

Cochain hodge(const Cochain& c, Exec exec) {
  const Mesh& m = c.mesh();
  Cochain out(c.mesh_ptr(), m.dim() - c.degree(),
              c.grid() == Grid::primal ? Grid::dual : Grid::primal);
  const auto n = static_cast<long>(c.size());
  auto in = c.values();
  auto res = out.values();
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      res[ui] = hodge_factor(m, c, ui) * in[ui];
    }
  } else {
    for (long i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      res[ui] = hodge_factor(m, c, ui) * in[ui];
    }
  }
  return out;
}

Cochain hodge_inverse(const Cochain& c, Exec exec) {
  Cochain out = hodge(c, exec);
  const int k = c.degree();
  if ((k * (c.mesh().dim() - k)) % 2 != 0) out *= -1.0;
  return out;
}

double wedge_integral(const Cochain& a, const Cochain& b) {
  if (a.mesh_ptr() != b.mesh_ptr()) throw std::invalid_argument("wedge of cochains on different meshes");
  if (a.degree() + b.degree() != a.mesh().dim()) {
    throw std::invalid_argument("wedge integral needs complementary degrees");
  }
  if (a.grid() == b.grid()) throw std::invalid_argument("wedge integral needs one primal and one dual cochain");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += mesh::shuffle_sign(a.form_axes(i), b.form_axes(i)) * a[i] * b[i];
  }
  return s;
}

double pair_complementary(const Cochain& a, const Cochain& b) { return wedge_integral(b, a); }

double integrate_top(const Cochain& c) {
  if (c.degree() != c.mesh().dim()) throw std::domain_error("integrate_top needs an n-cochain");
  double s = 0.0;
  for (double v : c.values()) s += v;
  return s;
}

BoundaryCochain trace_boundary(const Cochain& c, const std::shared_ptr<const mesh::BoundaryMesh>& b) {
  if (!b || b->parent_ptr() != c.mesh_ptr()) throw std::invalid_argument("boundary of a different mesh");
  const int n = c.mesh().dim();
  if (c.degree() >= n) throw std::domain_error("trace of a top-degree cochain");
  BoundaryCochain out;
  out.boundary = b;
  out.degree = c.degree();
  out.grid = c.grid();
  if (c.grid() == Grid::primal) {
    for (const auto& bc : b->cells(c.degree())) out.values.push_back(bc.orientation * c[bc.parent]);
  } else {
    for (const auto& bc : b->cells(n - 1 - c.degree())) {
      double v = 0.0;
      for (const auto& piece : bc.pieces) v += piece.sign * c[piece.inward];
      out.values.push_back(v);
    }
  }
  return out;
}

double boundary_sum(const BoundaryCochain& c) {
  const int bd = c.boundary->dim();
  if (c.degree != bd) throw std::domain_error("boundary_sum needs a top-degree boundary cochain");
  double s = 0.0;
  if (c.grid == Grid::primal) {
    for (double v : c.values) s += v;
  } else {
    // Dual top cells sit on boundary vertices; pair with the trace of the constant 1.
    const auto& verts = c.boundary->cells(0);
    for (std::size_t i = 0; i < c.values.size(); ++i) s += c.values[i] * verts[i].orientation;
  }
  return s;
}

double boundary_wedge_integral(const BoundaryCochain& a, const BoundaryCochain& b) {
  if (a.boundary != b.boundary && a.boundary->parent_ptr() != b.boundary->parent_ptr()) throw std::invalid_argument("boundary cochains on different boundaries");
  const int bd = a.boundary->dim();
  if (a.degree + b.degree != bd || a.grid == b.grid) {
    throw std::invalid_argument("boundary wedge needs complementary degrees on opposite grids");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  if (a.grid == Grid::dual && (a.degree * b.degree) % 2 != 0) s = -s;
  return s;
}

BoundaryCochain scaled(BoundaryCochain c, double s) {
  for (double& v : c.values) v *= s;
  return c;
}

namespace {

double carrier_measure(const Mesh& m, const Cochain& c, const CellRef& cell) {
  return c.grid() == Grid::primal ? m.primal_measure(cell.axes) : m.dual_measure(cell);
}

AxisMask carrier_axes_for(const Mesh& m, Grid g, AxisMask form) {
  return g == Grid::primal ? form : (m.all_axes() & ~form);
}

}  // namespace

PointField to_point_field(const Cochain& c) {
  const Mesh& m = c.mesh();
  const int n = m.dim();
  PointField f;
  f.mesh = c.mesh_ptr();
  f.degree = c.degree();
  const auto forms = mesh::subsets_of_size(n, c.degree());
  f.components = forms.size();
  const std::size_t cells = m.count(n);
  f.data.assign(cells * f.components, 0.0);
  for (std::size_t ci = 0; ci < cells; ++ci) {
    const CellRef top = m.cell(n, ci);
    for (std::size_t j = 0; j < forms.size(); ++j) {
      const AxisMask carrier = carrier_axes_for(m, c.grid(), forms[j]);
      const AxisMask free = m.all_axes() & ~carrier;
      double sum = 0.0;
      int count = 0;
      for (unsigned corner = 0; corner < (1u << n); ++corner) {
        if (corner & ~free) continue;
        CellRef cell{carrier, top.base};
        for (int a = 0; a < n; ++a) {
          if (corner & (1u << a)) cell.base[static_cast<std::size_t>(a)] += 1;
        }
        const std::size_t idx = m.index(carrier, cell.base);
        sum += c[idx] / carrier_measure(m, c, cell);
        ++count;
      }
      f.data[ci * f.components + j] = sum / count;
    }
  }
  return f;
}

Cochain from_point_field(const PointField& f, Grid grid) {
  const Mesh& m = *f.mesh;
  const int n = m.dim();
  Cochain out(f.mesh, f.degree, grid);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const CellRef cell = m.cell(out.carrier_degree(), i);
    const AxisMask form = out.form_axes(i);
    const std::size_t j = exterior::component_index(n, form);
    double sum = 0.0;
    int count = 0;
    for (unsigned shift = 0; shift < (1u << n); ++shift) {
      if (shift & cell.axes) continue;
      mesh::Position base = cell.base;
      bool ok = true;
      for (int a = 0; a < n; ++a) {
        if (shift & (1u << a)) base[static_cast<std::size_t>(a)] -= 1;
        const int p = base[static_cast<std::size_t>(a)];
        if (p < 0 || p >= m.cells(a)) ok = false;
      }
      if (!ok) continue;
      sum += f.data[m.index(m.all_axes(), base) * f.components + j];
      ++count;
    }
    out[i] = sum / count * carrier_measure(m, out, cell);
  }
  return out;
}

exterior::PointForm corner_form(const Cochain& c, std::size_t cell, unsigned corner) {
  const Mesh& m = c.mesh();
  const int n = m.dim();
  const CellRef top = m.cell(n, cell);
  exterior::PointForm pf = exterior::zero_form(n, c.degree());
  const auto forms = mesh::subsets_of_size(n, c.degree());
  for (std::size_t j = 0; j < forms.size(); ++j) {
    const AxisMask carrier = carrier_axes_for(m, c.grid(), forms[j]);
    CellRef cr{carrier, top.base};
    for (int a = 0; a < n; ++a) {
      if (!(carrier & (AxisMask{1} << a)) && (corner & (1u << a))) {
        cr.base[static_cast<std::size_t>(a)] += 1;
      }
    }
    pf.comp[j] = c[m.index(carrier, cr.base)] / carrier_measure(m, c, cr);
  }
  return pf;
}

void write_snapshot(std::ostream& os, const Cochain& c) {
  os << "degree " << c.degree() << " grid " << grid_tag(c.grid()) << " cells " << c.size() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", c[i]);
    os << i << ' ' << buf << '\n';
  }
}

Cochain read_snapshot(std::istream& is, const MeshPtr& mesh) {
  std::string w1, w2, w3, tag;
  int degree = 0;
  std::size_t count = 0;
  if (!(is >> w1 >> degree >> w2 >> tag >> w3 >> count) || w1 != "degree" || w2 != "grid" ||
      w3 != "cells" || (tag != "p" && tag != "d")) {
    throw std::runtime_error("malformed cochain snapshot header");
  }
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t idx = 0;
    double v = 0.0;
    if (!(is >> idx >> v) || idx != i) throw std::runtime_error("malformed cochain snapshot row");
    values[i] = v;
  }
  return Cochain(mesh, degree, tag == "p" ? Grid::primal : Grid::dual, std::move(values));
}

}  // namespace diraclab::forms
