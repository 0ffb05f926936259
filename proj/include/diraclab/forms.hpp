#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "diraclab/exterior.hpp"
#include "diraclab/mesh.hpp"

namespace diraclab::forms {

using mesh::Mesh;
using mesh::MeshPtr;

enum class Grid { primal, dual };
// Kernels come in an OpenMP version and a serial reference version.
enum class Exec { serial, parallel };

char grid_tag(Grid g);

// Discrete k-form storing one integral per oriented cell. A dual k-cochain
// is carried by the primal (n-k)-cells, one value per dual cell.
class Cochain {
 public:
  Cochain(MeshPtr mesh, int degree, Grid grid);
  Cochain(MeshPtr mesh, int degree, Grid grid, std::vector<double> values);

  const Mesh& mesh() const { return *mesh_; }
  const MeshPtr& mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  Grid grid() const { return grid_; }
  // Degree of the primal cells that carry the values.
  int carrier_degree() const;
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  // Axes spanned by the form on the cell carrying value i.
  mesh::AxisMask form_axes(std::size_t i) const;

  bool compatible(const Cochain& other) const;
  Cochain& operator+=(const Cochain& other);
  Cochain& operator-=(const Cochain& other);
  Cochain& operator*=(double s);

 private:
  MeshPtr mesh_;
  int degree_;
  Grid grid_;
  std::vector<double> values_;
};

Cochain operator+(Cochain a, const Cochain& b);
Cochain operator-(Cochain a, const Cochain& b);
Cochain operator*(double s, Cochain a);
double max_abs(const Cochain& c);
double max_abs_diff(const Cochain& a, const Cochain& b);

Cochain exterior_derivative(const Cochain& c, Exec exec = Exec::parallel);
Cochain hodge(const Cochain& c, Exec exec = Exec::parallel);
Cochain hodge_inverse(const Cochain& c, Exec exec = Exec::parallel);

// Integral of a ^ b over the domain for complementary degrees on opposite grids.
double wedge_integral(const Cochain& a, const Cochain& b);
// Integral of b ^ a, so that pair_complementary(hodge(b), b) is the squared L2 norm of b.
double pair_complementary(const Cochain& a, const Cochain& b);
double integrate_top(const Cochain& c);

// Cochain on the boundary complex. Primal boundary j-cochains sit on boundary
// j-cells with boundary orientation; dual boundary m-cochains sit on boundary
// (n-1-m)-cells.
struct BoundaryCochain {
  std::shared_ptr<const mesh::BoundaryMesh> boundary;
  int degree = 0;
  Grid grid = Grid::primal;
  std::vector<double> values;
};

BoundaryCochain trace_boundary(const Cochain& c, const std::shared_ptr<const mesh::BoundaryMesh>& b);
// Integral of a top-degree boundary cochain over the oriented boundary.
double boundary_sum(const BoundaryCochain& c);
double boundary_wedge_integral(const BoundaryCochain& a, const BoundaryCochain& b);
BoundaryCochain scaled(BoundaryCochain c, double s);

// Coframe components of a form at every n-cell center.
struct PointField {
  MeshPtr mesh;
  int degree = 0;
  std::size_t components = 0;
  std::vector<double> data;  // cell-major
  std::span<const double> at(std::size_t cell) const {
    return std::span<const double>(data).subspan(cell * components, components);
  }
};

PointField to_point_field(const Cochain& c);
Cochain from_point_field(const PointField& f, Grid grid);
// Coframe components at one corner of an n-cell: each component is read from
// the unique carrier cell of that orientation touching the corner.
exterior::PointForm corner_form(const Cochain& c, std::size_t cell, unsigned corner);

void write_snapshot(std::ostream& os, const Cochain& c);
Cochain read_snapshot(std::istream& is, const MeshPtr& mesh);

}  // namespace diraclab::forms
