#include "diraclab/mesh.hpp"

#include <bit>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace diraclab::mesh {

int popcount(AxisMask m) { return std::popcount(m); }

int shuffle_sign(AxisMask first, AxisMask second) {
  int inversions = 0;
  for (int i = 0; i < kMaxDim; ++i) {
    if (!(first & (AxisMask{1} << i))) continue;
    for (int j = 0; j < i; ++j) {
      if (second & (AxisMask{1} << j)) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

int rank_in(AxisMask m, int axis) {
  return std::popcount(m & ((AxisMask{1} << axis) - 1));
}

std::vector<AxisMask> subsets_of_size(int dim, int k) {
  std::vector<AxisMask> out;
  // Recursive lexicographic enumeration of sorted index lists.
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == k) {
      AxisMask m = 0;
      for (int a : pick) m |= AxisMask{1} << a;
      out.push_back(m);
      return;
    }
    for (int a = start; a < dim; ++a) {
      pick.push_back(a);
      self(self, a + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Mesh Mesh::build(int dim, std::span<const int> cells_per_axis,
                 std::span<const double> lengths) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("mesh dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (cells_per_axis.size() != static_cast<std::size_t>(dim) ||
      lengths.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("mesh needs one cell count and one length per axis");
  }
  Mesh m;
  m.dim_ = dim;
  for (int a = 0; a < dim; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (cells_per_axis[ua] < 1) throw std::invalid_argument("cell counts must be positive");
    if (!(lengths[ua] > 0.0)) throw std::invalid_argument("lengths must be positive");
    m.cells_[ua] = cells_per_axis[ua];
    m.spacing_[ua] = lengths[ua] / cells_per_axis[ua];
  }
  m.build_tables();
  return m;
}

MeshPtr make_mesh(int dim, std::span<const int> cells_per_axis,
                  std::span<const double> lengths) {
  return std::make_shared<const Mesh>(Mesh::build(dim, cells_per_axis, lengths));
}

int Mesh::extent(AxisMask axes, int axis) const {
  return (axes & (AxisMask{1} << axis)) ? cells(axis) : cells(axis) + 1;
}

void Mesh::build_tables() {
  for (int k = 0; k <= dim_; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    orient_[uk] = subsets_of_size(dim_, k);
    block_offset_[uk].clear();
    std::size_t total = 0;
    for (AxisMask o : orient_[uk]) {
      block_offset_[uk].push_back(total);
      std::size_t n = 1;
      for (int a = 0; a < dim_; ++a) n *= static_cast<std::size_t>(extent(o, a));
      total += n;
    }
    count_[uk] = total;
  }
  for (int k = 0; k < dim_; ++k) {
    cobound_[static_cast<std::size_t>(k)] = make_coboundary(k);
    dual_cobound_[static_cast<std::size_t>(k)] = make_dual_coboundary(k);
  }
}

std::size_t Mesh::count(int k) const {
  if (k < 0 || k > dim_) return 0;
  return count_[static_cast<std::size_t>(k)];
}

const std::vector<AxisMask>& Mesh::orientations(int k) const {
  return orient_.at(static_cast<std::size_t>(k));
}

bool Mesh::contains(AxisMask axes, const Position& base) const {
  for (int a = 0; a < dim_; ++a) {
    const int p = base[static_cast<std::size_t>(a)];
    if (p < 0 || p >= extent(axes, a)) return false;
  }
  return true;
}

std::size_t Mesh::index(AxisMask axes, const Position& base) const {
  const int k = popcount(axes);
  const auto& ors = orient_[static_cast<std::size_t>(k)];
  std::size_t block = 0;
  while (ors[block] != axes) ++block;
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) {
    idx = idx * static_cast<std::size_t>(extent(axes, a)) +
          static_cast<std::size_t>(base[static_cast<std::size_t>(a)]);
  }
  return block_offset_[static_cast<std::size_t>(k)][block] + idx;
}

CellRef Mesh::cell(int k, std::size_t idx) const {
  const auto uk = static_cast<std::size_t>(k);
  const auto& offs = block_offset_[uk];
  std::size_t block = offs.size() - 1;
  while (offs[block] > idx) --block;
  CellRef c;
  c.axes = orient_[uk][block];
  std::size_t rem = idx - offs[block];
  for (int a = dim_ - 1; a >= 0; --a) {
    const auto e = static_cast<std::size_t>(extent(c.axes, a));
    c.base[static_cast<std::size_t>(a)] = static_cast<int>(rem % e);
    rem /= e;
  }
  return c;
}

double Mesh::primal_measure(AxisMask axes) const {
  double m = 1.0;
  for (int a = 0; a < dim_; ++a) {
    if (axes & (AxisMask{1} << a)) m *= spacing(a);
  }
  return m;
}

double Mesh::dual_measure(const CellRef& c) const {
  double m = 1.0;
  for (int a = 0; a < dim_; ++a) {
    if (c.axes & (AxisMask{1} << a)) continue;
    const int p = c.base[static_cast<std::size_t>(a)];
    m *= (p == 0 || p == cells(a)) ? 0.5 * spacing(a) : spacing(a);
  }
  return m;
}

bool Mesh::on_boundary(const CellRef& c) const {
  for (int a = 0; a < dim_; ++a) {
    if (c.axes & (AxisMask{1} << a)) continue;
    const int p = c.base[static_cast<std::size_t>(a)];
    if (p == 0 || p == cells(a)) return true;
  }
  return false;
}

int Mesh::euler_characteristic() const {
  long chi = 0;
  for (int k = 0; k <= dim_; ++k) {
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(count(k));
  }
  return static_cast<int>(chi);
}

const Incidence& Mesh::coboundary(int k) const {
  if (k < 0 || k >= dim_) throw std::out_of_range("no coboundary from top degree");
  return cobound_[static_cast<std::size_t>(k)];
}

std::array<double, kMaxDim> Mesh::center(const CellRef& c) const {
  std::array<double, kMaxDim> x{};
  for (int a = 0; a < dim_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const double off = (c.axes >> a) & 1u ? 0.5 : 0.0;
    x[ua] = (c.base[ua] + off) * spacing_[ua];
  }
  return x;
}

const Incidence& Mesh::dual_coboundary(int m) const {
  if (m < 0 || m >= dim_) throw std::out_of_range("no dual coboundary from top degree");
  return dual_cobound_[static_cast<std::size_t>(m)];
}

Incidence Mesh::make_coboundary(int k) const {
  Incidence inc;
  inc.rows = count(k + 1);
  inc.cols = count(k);
  inc.row_start.reserve(inc.rows + 1);
  inc.row_start.push_back(0);
  for (std::size_t r = 0; r < inc.rows; ++r) {
    const CellRef t = cell(k + 1, r);
    for (int a = 0; a < dim_; ++a) {
      const AxisMask bit = AxisMask{1} << a;
      if (!(t.axes & bit)) continue;
      const int sgn = (rank_in(t.axes, a) % 2 == 0) ? 1 : -1;
      const AxisMask face = t.axes & ~bit;
      Position hi = t.base;
      hi[static_cast<std::size_t>(a)] += 1;
      inc.col.push_back(index(face, t.base));
      inc.coeff.push_back(-sgn);
      inc.col.push_back(index(face, hi));
      inc.coeff.push_back(sgn);
    }
    inc.row_start.push_back(inc.col.size());
  }
  return inc;
}

Incidence Mesh::make_dual_coboundary(int m) const {
  // Dual m-cells sit on primal (n-m)-cells; the result sits on primal (n-m-1)-cells.
  const int k = dim_ - m - 1;
  Incidence inc;
  inc.rows = count(k);
  inc.cols = count(k + 1);
  inc.row_start.reserve(inc.rows + 1);
  inc.row_start.push_back(0);
  for (std::size_t r = 0; r < inc.rows; ++r) {
    const CellRef s = cell(k, r);
    const AxisMask comp = all_axes() & ~s.axes;
    std::map<std::size_t, int> acc;
    for (int a = 0; a < dim_; ++a) {
      const AxisMask bit = AxisMask{1} << a;
      if (!(comp & bit)) continue;
      const int sgn = (rank_in(comp, a) % 2 == 0) ? 1 : -1;
      const int p = s.base[static_cast<std::size_t>(a)];
      Position lo = s.base;
      lo[static_cast<std::size_t>(a)] = p - 1;
      const bool has_hi = p < cells(a);
      const bool has_lo = p > 0;
      const std::size_t t_hi = has_hi ? index(s.axes | bit, s.base) : index(s.axes | bit, lo);
      const std::size_t t_lo = has_lo ? index(s.axes | bit, lo) : index(s.axes | bit, s.base);
      acc[t_hi] += sgn;
      acc[t_lo] -= sgn;
    }
    for (const auto& [c, v] : acc) {
      if (v == 0) continue;
      inc.col.push_back(c);
      inc.coeff.push_back(v);
    }
    inc.row_start.push_back(inc.col.size());
  }
  return inc;
}

BoundaryMesh::BoundaryMesh(MeshPtr parent) : parent_(std::move(parent)) {
  const Mesh& m = *parent_;
  const int n = m.dim();
  for (int a = 0; a < n; ++a) {
    const int s = (a % 2 == 0) ? 1 : -1;
    faces_.push_back(BoxFace{a, false, -s});
    faces_.push_back(BoxFace{a, true, s});
  }
  for (int j = 0; j < n; ++j) {
    auto& out = cells_[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < m.count(j); ++i) {
      const CellRef c = m.cell(j, i);
      if (!m.on_boundary(c)) continue;
      BoundaryCell bc;
      bc.parent = i;
      struct Hit { int axis; bool high; int face_orientation; };
      std::vector<Hit> hits;
      for (const BoxFace& f : faces_) {
        const AxisMask bit = AxisMask{1} << f.axis;
        if (c.axes & bit) continue;
        const int p = c.base[static_cast<std::size_t>(f.axis)];
        if ((f.high && p == m.cells(f.axis)) || (!f.high && p == 0)) {
          hits.push_back(Hit{f.axis, f.high, f.orientation});
        }
      }
      bc.orientation = (j == n - 1) ? hits.front().face_orientation : 1;
      for (const Hit& h : hits) {
        const AxisMask bit = AxisMask{1} << h.axis;
        Position base = c.base;
        if (h.high) base[static_cast<std::size_t>(h.axis)] -= 1;
        const AxisMask piece_axes = m.all_axes() & ~c.axes & ~bit;
        const int sign = h.face_orientation * bc.orientation * shuffle_sign(c.axes, piece_axes);
        bc.pieces.push_back(TracePiece{m.index(c.axes | bit, base), sign});
      }
      out.push_back(std::move(bc));
    }
  }
}

int BoundaryMesh::euler_characteristic() const {
  long chi = 0;
  for (int j = 0; j <= dim(); ++j) {
    chi += (j % 2 == 0 ? 1 : -1) * static_cast<long>(count(j));
  }
  return static_cast<int>(chi);
}

Incidence BoundaryMesh::coboundary(int j) const {
  if (j < 0 || j >= dim()) throw std::out_of_range("no boundary coboundary from top degree");
  const Incidence& pinc = parent_->coboundary(j);
  std::unordered_map<std::size_t, std::size_t> local;
  const auto& lower = cells(j);
  for (std::size_t i = 0; i < lower.size(); ++i) local[lower[i].parent] = i;
  Incidence inc;
  inc.rows = count(j + 1);
  inc.cols = count(j);
  inc.row_start.push_back(0);
  for (const BoundaryCell& bc : cells(j + 1)) {
    for (std::size_t e = pinc.row_start[bc.parent]; e < pinc.row_start[bc.parent + 1]; ++e) {
      const auto it = local.find(pinc.col[e]);
      if (it == local.end()) continue;
      inc.col.push_back(it->second);
      inc.coeff.push_back(bc.orientation * pinc.coeff[e] * lower[it->second].orientation);
    }
    inc.row_start.push_back(inc.col.size());
  }
  return inc;
}

BoundaryMesh boundary_complex(const MeshPtr& mesh) { return BoundaryMesh(mesh); }

}  // namespace diraclab::mesh
