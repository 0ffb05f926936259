#include "diraclab/stokes_dirac.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace diraclab::stokes_dirac {

using forms::Grid;

void Signature::validate() const {
  if (n < 1 || n > mesh::kMaxDim) throw std::invalid_argument("signature dimension must be 1, 2 or 3");
  if (p < 0 || p > n || q < 0 || q > n) throw std::invalid_argument("signature degrees must lie in 0..n");
  if (p + q != n + 1) throw std::invalid_argument("signature must satisfy p + q = n + 1, got " + label());
}

std::string Signature::label() const {
  return "(" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(q) + ")";
}

Cochain zero_effort_p(const mesh::MeshPtr& m, const Signature& s) {
  return Cochain(m, s.n - s.p, Grid::dual);
}

Cochain zero_effort_q(const mesh::MeshPtr& m, const Signature& s) {
  return Cochain(m, s.n - s.q, Grid::primal);
}

namespace {

void check_efforts(const Cochain& e_p, const Cochain& e_q, const Signature& s) {
  s.validate();
  if (e_p.mesh().dim() != s.n || e_q.mesh_ptr() != e_p.mesh_ptr()) {
    throw std::invalid_argument("efforts must share a mesh of the signature dimension");
  }
  if (e_p.degree() != s.n - s.p || e_p.grid() != Grid::dual) {
    throw std::invalid_argument("e_p must be a dual (n-p)-cochain");
  }
  if (e_q.degree() != s.n - s.q || e_q.grid() != Grid::primal) {
    throw std::invalid_argument("e_q must be a primal (n-q)-cochain");
  }
}

BoundaryPtr ensure_boundary(const mesh::MeshPtr& m, BoundaryPtr b) {
  if (b) return b;
  return std::make_shared<const mesh::BoundaryMesh>(m);
}

double sum_squares(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

FlowEffortTuple structure_map(const Cochain& e_p, const Cochain& e_q, const Signature& s,
                              BoundaryPtr boundary) {
  check_efforts(e_p, e_q, s);
  boundary = ensure_boundary(e_p.mesh_ptr(), std::move(boundary));
  const double sign_bnd = ((s.n - s.q) % 2 == 0) ? -1.0 : 1.0;
  return FlowEffortTuple{
      s,
      s.r_sign() * forms::exterior_derivative(e_q),
      forms::exterior_derivative(e_p),
      forms::trace_boundary(e_p, boundary),
      e_p,
      e_q,
      forms::scaled(forms::trace_boundary(e_q, boundary), sign_bnd),
  };
}

BoundaryCochain boundary_effort(const Cochain& e_q, const Signature& s, const BoundaryPtr& boundary) {
  return forms::scaled(forms::trace_boundary(e_q, boundary), s.p % 2 == 0 ? 1.0 : -1.0);
}

namespace {

double half_pairing(const FlowEffortTuple& e, const FlowEffortTuple& f) {
  return forms::wedge_integral(e.e_p, f.f_p) + forms::wedge_integral(e.e_q, f.f_q) +
         forms::boundary_wedge_integral(e.e_bnd, f.f_bnd);
}

}  // namespace

double bilinear_form(const FlowEffortTuple& a, const FlowEffortTuple& b) {
  if (!(a.signature == b.signature)) throw std::invalid_argument("bilinear form of tuples with different signatures");
  return half_pairing(a, b) + half_pairing(b, a);
}

double power(const FlowEffortTuple& t) { return half_pairing(t, t); }

double squared_norm(const FlowEffortTuple& t) {
  return sum_squares(t.f_p.values()) + sum_squares(t.f_q.values()) + sum_squares(t.f_bnd.values) +
         sum_squares(t.e_p.values()) + sum_squares(t.e_q.values()) + sum_squares(t.e_bnd.values);
}

double check_isotropy(const Cochain& e_p, const Cochain& e_q, const Cochain& e_p2, const Cochain& e_q2,
                      const Signature& s, BoundaryPtr boundary) {
  boundary = ensure_boundary(e_p.mesh_ptr(), std::move(boundary));
  const FlowEffortTuple a = structure_map(e_p, e_q, s, boundary);
  const FlowEffortTuple b = structure_map(e_p2, e_q2, s, boundary);
  const double scale = std::sqrt(squared_norm(a) * squared_norm(b));
  if (scale == 0.0) return 0.0;
  return std::abs(bilinear_form(a, b)) / scale;
}

namespace {

// Flat coordinates of a tuple in the order f_p, f_q, f_bnd, e_p, e_q, e_bnd.
struct Layout {
  std::size_t sizes[6];
  std::size_t total() const {
    std::size_t t = 0;
    for (std::size_t v : sizes) t += v;
    return t;
  }
};

Layout layout_of(const FlowEffortTuple& t) {
  return Layout{{t.f_p.size(), t.f_q.size(), t.f_bnd.values.size(), t.e_p.size(), t.e_q.size(),
                 t.e_bnd.values.size()}};
}

std::vector<std::span<double>> slots(FlowEffortTuple& t) {
  return {t.f_p.values(), t.f_q.values(), t.f_bnd.values, t.e_p.values(), t.e_q.values(), t.e_bnd.values};
}

Eigen::VectorXd flatten(FlowEffortTuple t) {
  const Layout l = layout_of(t);
  Eigen::VectorXd v(static_cast<Eigen::Index>(l.total()));
  Eigen::Index k = 0;
  for (std::span<double> s : slots(t)) {
    for (double x : s) v[k++] = x;
  }
  return v;
}

FlowEffortTuple unit_tuple(const FlowEffortTuple& shape, std::size_t index) {
  FlowEffortTuple t = shape;
  for (std::span<double> s : slots(t)) {
    for (double& x : s) x = 0.0;
  }
  for (std::span<double> s : slots(t)) {
    if (index < s.size()) {
      s[index] = 1.0;
      break;
    }
    index -= s.size();
  }
  return t;
}

Eigen::Index numeric_rank(const Eigen::MatrixXd& a) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  return lu.rank();
}

}  // namespace

DimensionCount dimension_count(const mesh::MeshPtr& m, const Signature& s) {
  s.validate();
  const BoundaryPtr b = ensure_boundary(m, nullptr);
  Cochain e_p = zero_effort_p(m, s);
  Cochain e_q = zero_effort_q(m, s);
  const FlowEffortTuple shape = structure_map(e_p, e_q, s, b);
  const std::size_t total = layout_of(shape).total();
  const std::size_t inputs = e_p.size() + e_q.size();

  Eigen::MatrixXd image(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(inputs));
  for (std::size_t j = 0; j < inputs; ++j) {
    Cochain up = zero_effort_p(m, s);
    Cochain uq = zero_effort_q(m, s);
    if (j < up.size()) {
      up[j] = 1.0;
    } else {
      uq[j - up.size()] = 1.0;
    }
    image.col(static_cast<Eigen::Index>(j)) = flatten(structure_map(up, uq, s, b));
  }

  std::vector<FlowEffortTuple> units;
  units.reserve(total);
  for (std::size_t i = 0; i < total; ++i) units.push_back(unit_tuple(shape, i));
  Eigen::MatrixXd gram(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = bilinear_form(units[i], units[j]);
    }
  }

  DimensionCount out;
  out.total = total;
  out.image = static_cast<std::size_t>(numeric_rank(image));
  const Eigen::MatrixXd constraints = image.transpose() * gram;
  out.annihilator = total - static_cast<std::size_t>(numeric_rank(constraints));
  out.self_pairing = (constraints * image).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace diraclab::stokes_dirac
