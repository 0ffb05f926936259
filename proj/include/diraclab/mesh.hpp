#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace diraclab::mesh {

constexpr int kMaxDim = 3;

// Axis subsets are bitmasks: bit a set means the cell spans axis a.
using AxisMask = std::uint32_t;
using Position = std::array<int, kMaxDim>;

int popcount(AxisMask m);
// Sign of the permutation that sorts the concatenation (first, second).
// The masks must be disjoint.
int shuffle_sign(AxisMask first, AxisMask second);
// Rank of axis a among the set bits of m.
int rank_in(AxisMask m, int axis);
// Masks of size k in lexicographic order of their sorted axis lists.
std::vector<AxisMask> subsets_of_size(int dim, int k);

struct CellRef {
  AxisMask axes = 0;
  Position base{};
};

// Sparse signed integer matrix in row-compressed form.
struct Incidence {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_start;
  std::vector<std::size_t> col;
  std::vector<int> coeff;
};

// Structured cubical complex on an interval, rectangle or box.
// Cells of degree k are grouped by orientation (axis subset, lexicographic),
// then ordered lexicographically by base position with axis 0 most significant.
class Mesh {
 public:
  static Mesh build(int dim, std::span<const int> cells_per_axis,
                    std::span<const double> lengths);

  int dim() const { return dim_; }
  int cells(int axis) const { return cells_[static_cast<std::size_t>(axis)]; }
  double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
  double length(int axis) const { return spacing(axis) * cells(axis); }
  AxisMask all_axes() const { return (AxisMask{1} << dim_) - 1; }

  std::size_t count(int k) const;
  const std::vector<AxisMask>& orientations(int k) const;

  // Number of base positions along axis a for cells with the given axes.
  int extent(AxisMask axes, int axis) const;
  bool contains(AxisMask axes, const Position& base) const;
  std::size_t index(AxisMask axes, const Position& base) const;
  CellRef cell(int k, std::size_t idx) const;

  double primal_measure(AxisMask axes) const;
  // Coordinates of the centre of a primal cell; unused axes are zero.
  std::array<double, kMaxDim> center(const CellRef& c) const;
  // Measure of the dual cell of a primal cell, clipped at the domain boundary.
  double dual_measure(const CellRef& c) const;
  // True when the primal cell lies in the boundary of the domain.
  bool on_boundary(const CellRef& c) const;

  int euler_characteristic() const;

  // Coboundary of primal k-cochains into primal (k+1)-cochains.
  const Incidence& coboundary(int k) const;
  // Coboundary of dual m-cochains into dual (m+1)-cochains; rows are primal
  // (n-m-1)-cells, columns primal (n-m)-cells. Boundary faces of clipped dual
  // cells take the nearest inward value.
  const Incidence& dual_coboundary(int m) const;

 private:
  Mesh() = default;
  void build_tables();
  Incidence make_coboundary(int k) const;
  Incidence make_dual_coboundary(int m) const;

  int dim_ = 0;
  std::array<int, kMaxDim> cells_{1, 1, 1};
  std::array<double, kMaxDim> spacing_{1.0, 1.0, 1.0};
  std::array<std::vector<AxisMask>, kMaxDim + 1> orient_;
  std::array<std::vector<std::size_t>, kMaxDim + 1> block_offset_;
  std::array<std::size_t, kMaxDim + 1> count_{};
  std::array<Incidence, kMaxDim> cobound_;
  std::array<Incidence, kMaxDim> dual_cobound_;
};

using MeshPtr = std::shared_ptr<const Mesh>;
MeshPtr make_mesh(int dim, std::span<const int> cells_per_axis,
                  std::span<const double> lengths);

// One face of the domain box: the side (low or high) of one axis.
struct BoxFace {
  int axis = 0;
  bool high = false;
  // Sign of the outward-normal-first induced orientation relative to the
  // ascending remaining axes.
  int orientation = 1;
};

// Contribution of one box face to the dual cell of a boundary cell.
struct TracePiece {
  std::size_t inward = 0;  // parent cell one degree up, pointing into the domain
  int sign = 1;
};

struct BoundaryCell {
  std::size_t parent = 0;
  int orientation = 1;  // boundary orientation relative to the parent cell
  std::vector<TracePiece> pieces;
};

// Boundary complex of a mesh: degree-j cells are the parent j-cells lying in
// the boundary, for j = 0..n-1.
class BoundaryMesh {
 public:
  explicit BoundaryMesh(MeshPtr parent);

  const Mesh& parent() const { return *parent_; }
  const MeshPtr& parent_ptr() const { return parent_; }
  int dim() const { return parent_->dim() - 1; }
  std::size_t count(int j) const { return cells_[static_cast<std::size_t>(j)].size(); }
  const std::vector<BoundaryCell>& cells(int j) const { return cells_[static_cast<std::size_t>(j)]; }
  const std::vector<BoxFace>& faces() const { return faces_; }
  int euler_characteristic() const;
  // Coboundary of the boundary complex itself (j -> j+1), with boundary orientations.
  Incidence coboundary(int j) const;

 private:
  MeshPtr parent_;
  std::vector<BoxFace> faces_;
  std::array<std::vector<BoundaryCell>, kMaxDim> cells_;
};

BoundaryMesh boundary_complex(const MeshPtr& mesh);

}  // namespace diraclab::mesh
