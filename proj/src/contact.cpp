#include "diraclab/contact.hpp"

#include <cmath>
#include <stdexcept>

namespace diraclab::contact {

Tangent contact_field(const HamiltonianJet& h, const ContactPoint& pt) {
  const std::size_t n = pt.x.size();
  if (h.dx.size() != n || h.dy.size() != n || pt.y.size() != n) {
    throw std::invalid_argument("hamiltonian jet does not match the point dimension");
  }
  Tangent t;
  t.x.resize(n);
  t.y.resize(n);
  t.z = h.value;
  for (std::size_t a = 0; a < n; ++a) {
    t.x[a] = -h.dy[a];
    t.y[a] = h.dx[a] + pt.y[a] * h.dz;
    t.z -= pt.y[a] * h.dy[a];
  }
  return t;
}

Tangent contact_field(const Hamiltonian& h, const ContactPoint& pt) { return contact_field(h(pt), pt); }

double contact_form(const ContactPoint& pt, const Tangent& v) {
  double s = v.z;
  for (std::size_t a = 0; a < pt.y.size(); ++a) s -= pt.y[a] * v.x[a];
  return s;
}

double contact_two_form(const Tangent& u, const Tangent& v) {
  double s = 0.0;
  for (std::size_t a = 0; a < u.x.size(); ++a) s += u.x[a] * v.y[a] - u.y[a] * v.x[a];
  return s;
}

Tangent reeb_field(std::size_t dim) {
  Tangent t;
  t.x.assign(dim, 0.0);
  t.y.assign(dim, 0.0);
  t.z = 1.0;
  return t;
}

ContactPoint legendre_point(const density::Density& psi, std::span<const double> x) {
  ContactPoint pt;
  pt.x.assign(x.begin(), x.end());
  pt.y = psi.grad(x);
  pt.z = psi.value(x);
  return pt;
}

ContactPoint legendre_point_dual(const density::Density& phi, std::span<const double> y) {
  ContactPoint pt;
  pt.y.assign(y.begin(), y.end());
  pt.x = phi.grad(y);
  pt.z = -phi.value(y);
  for (std::size_t a = 0; a < pt.x.size(); ++a) pt.z += pt.y[a] * pt.x[a];
  return pt;
}

double AdaptedValues::max_abs() const {
  double m = std::abs(delta0);
  for (double d : delta) m = std::max(m, std::abs(d));
  return m;
}

AdaptedValues adapted_values(const ContactPoint& pt, const density::Density& psi) {
  AdaptedValues out;
  out.delta0 = psi.value(pt.x) - pt.z;
  out.delta = psi.grad(pt.x);
  for (std::size_t a = 0; a < out.delta.size(); ++a) out.delta[a] -= pt.y[a];
  return out;
}

AdaptedValues adapted_values_dual(const ContactPoint& pt, const density::Density& phi) {
  AdaptedValues out;
  out.delta0 = -phi.value(pt.y) - pt.z;
  out.delta = phi.grad(pt.y);
  for (std::size_t a = 0; a < out.delta.size(); ++a) {
    out.delta0 += pt.x[a] * pt.y[a];
    out.delta[a] = pt.x[a] - out.delta[a];
  }
  return out;
}

namespace {

void check_spec(const ContactHamiltonianSpec& spec, const ContactPoint& pt) {
  if (!spec.psi) throw std::invalid_argument("contact hamiltonian needs a generating density");
  const std::size_t n = spec.psi->dim();
  if (pt.x.size() != n || pt.y.size() != n || spec.drift.size() != n) {
    throw std::invalid_argument("contact hamiltonian dimensions do not match");
  }
}

}  // namespace

HamiltonianJet restricted_hamiltonian(const ContactHamiltonianSpec& spec, const ContactPoint& pt) {
  check_spec(spec, pt);
  const std::size_t n = pt.x.size();
  const AdaptedValues d = adapted_values(pt, *spec.psi);
  const std::vector<double> grad = spec.psi->grad(pt.x);
  const std::vector<double> hess = spec.psi->hess(pt.x);
  HamiltonianJet j;
  j.value = spec.gamma(d.delta0);
  j.dx.assign(n, 0.0);
  j.dy.assign(n, 0.0);
  j.dz = -spec.gamma.derivative();
  for (std::size_t a = 0; a < n; ++a) {
    j.value += d.delta[a] * spec.drift[a];
    j.dy[a] = -spec.drift[a];
    j.dx[a] = spec.gamma.derivative() * grad[a];
    for (std::size_t b = 0; b < n; ++b) j.dx[a] += hess[a * n + b] * spec.drift[b];
  }
  return j;
}

HamiltonianJet restricted_hamiltonian_dual(const ContactHamiltonianSpec& spec, const ContactPoint& pt) {
  check_spec(spec, pt);
  const std::size_t n = pt.y.size();
  const AdaptedValues d = adapted_values_dual(pt, *spec.psi);
  const std::vector<double> grad = spec.psi->grad(pt.y);
  const std::vector<double> hess = spec.psi->hess(pt.y);
  const double k = spec.gamma.derivative();
  HamiltonianJet j;
  j.value = spec.gamma(d.delta0);
  j.dx.assign(n, 0.0);
  j.dy.assign(n, 0.0);
  j.dz = -k;
  for (std::size_t a = 0; a < n; ++a) {
    j.value += d.delta[a] * spec.drift[a];
    j.dx[a] = spec.drift[a] + k * pt.y[a];
    j.dy[a] = k * (pt.x[a] - grad[a]);
    for (std::size_t b = 0; b < n; ++b) j.dy[a] -= hess[a * n + b] * spec.drift[b];
  }
  return j;
}

Tangent restricted_field(const ContactHamiltonianSpec& spec, const ContactPoint& pt) {
  check_spec(spec, pt);
  if (adapted_values(pt, *spec.psi).max_abs() > kSubmanifoldTolerance) {
    throw std::domain_error("point is not on the Legendre submanifold of psi");
  }
  return contact_field(restricted_hamiltonian(spec, pt), pt);
}

Tangent restricted_field_dual(const ContactHamiltonianSpec& spec, const ContactPoint& pt) {
  check_spec(spec, pt);
  if (adapted_values_dual(pt, *spec.psi).max_abs() > kSubmanifoldTolerance) {
    throw std::domain_error("point is not on the Legendre submanifold of -phi");
  }
  return contact_field(restricted_hamiltonian_dual(spec, pt), pt);
}

}  // namespace diraclab::contact
