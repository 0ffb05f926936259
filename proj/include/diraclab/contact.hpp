#pragma once

#include <functional>
#include <vector>

#include "diraclab/density.hpp"

namespace diraclab::contact {

// Canonical coordinates (x, y, z) with contact form dz - y.dx.
struct ContactPoint {
  std::vector<double> x;
  std::vector<double> y;
  double z = 0.0;
};

// Components of a tangent vector at a contact point.
struct Tangent {
  std::vector<double> x;
  std::vector<double> y;
  double z = 0.0;
};

// Value and first derivatives of a contact Hamiltonian at a point.
struct HamiltonianJet {
  double value = 0.0;
  std::vector<double> dx;
  std::vector<double> dy;
  double dz = 0.0;
};

using Hamiltonian = std::function<HamiltonianJet(const ContactPoint&)>;

// x' = -dh/dy, y' = dh/dx + y dh/dz, z' = h - y.dh/dy
Tangent contact_field(const HamiltonianJet& h, const ContactPoint& pt);
Tangent contact_field(const Hamiltonian& h, const ContactPoint& pt);

// lambda(v) = v_z - y.v_x
double contact_form(const ContactPoint& pt, const Tangent& v);
// d lambda(u, v) = sum_a (u_x^a v_y_a - u_y_a v_x^a)
double contact_two_form(const Tangent& u, const Tangent& v);
Tangent reeb_field(std::size_t dim);

// Point (x, grad psi(x), psi(x)) of the Legendre submanifold generated by psi.
ContactPoint legendre_point(const density::Density& psi, std::span<const double> x);
// Point (grad phi(y), y, y.grad phi(y) - phi(y)) of the submanifold generated by -phi.
ContactPoint legendre_point_dual(const density::Density& phi, std::span<const double> y);

struct AdaptedValues {
  double delta0 = 0.0;
  std::vector<double> delta;
  double max_abs() const;
};

// delta0 = psi(x) - z, delta_a = dpsi/dx^a - y_a
AdaptedValues adapted_values(const ContactPoint& pt, const density::Density& psi);
// delta0 = x.y - phi(y) - z, delta^a = x^a - dphi/dy_a
AdaptedValues adapted_values_dual(const ContactPoint& pt, const density::Density& phi);

// Gamma(u) = kappa u: zero exactly at u = 0 and nonzero elsewhere for kappa != 0.
struct LinearGamma {
  double kappa = 1.0;
  double operator()(double u) const { return kappa * u; }
  double derivative() const { return kappa; }
};

// h = delta_a F^a + Gamma(delta0) with the drift F frozen at the point.
struct ContactHamiltonianSpec {
  density::DensityPtr psi;
  std::vector<double> drift;
  LinearGamma gamma;
};

// Points farther than this from the generating submanifold are rejected.
inline constexpr double kSubmanifoldTolerance = 1e-9;

HamiltonianJet restricted_hamiltonian(const ContactHamiltonianSpec& spec, const ContactPoint& pt);
HamiltonianJet restricted_hamiltonian_dual(const ContactHamiltonianSpec& spec, const ContactPoint& pt);

// Contact field of the restricted Hamiltonian; throws std::domain_error off the submanifold.
Tangent restricted_field(const ContactHamiltonianSpec& spec, const ContactPoint& pt);
// Mirror for the submanifold generated by -phi; spec.psi holds phi and the drift drives y.
Tangent restricted_field_dual(const ContactHamiltonianSpec& spec, const ContactPoint& pt);

}  // namespace diraclab::contact
