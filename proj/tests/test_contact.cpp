#include <cmath>
#include <random>

#include "diraclab/contact.hpp"
#include "doctest.h"

using namespace diraclab;
using contact::ContactHamiltonianSpec;
using contact::ContactPoint;
using contact::HamiltonianJet;
using contact::Tangent;
using density::PolynomialDensity;

namespace {

density::DensityPtr half_square(std::size_t dim) {
  return std::make_shared<const PolynomialDensity>(PolynomialDensity::diagonal(std::vector<double>(dim, 1.0)));
}

density::DensityPtr random_density(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(dim * dim), b(dim), c(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a[i * dim + j] = a[j * dim + i] = u(rng);
    b[i] = u(rng);
    c[i] = 0.5 * (u(rng) + 1.0);
  }
  return std::make_shared<const PolynomialDensity>(dim, a, b, c);
}

std::vector<double> random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(dim);
  for (double& x : v) x = u(rng);
  return v;
}

// h(u) = a + b.u + 1/2 u.C u + d u_x0 u_y0 u_z over u = (x, y, z).
struct PolyHamiltonian {
  std::size_t dim;
  double a;
  std::vector<double> b;
  std::vector<double> c;
  double d;

  std::size_t size() const { return 2 * dim + 1; }
  std::vector<double> flat(const ContactPoint& pt) const {
    std::vector<double> u(pt.x);
    u.insert(u.end(), pt.y.begin(), pt.y.end());
    u.push_back(pt.z);
    return u;
  }
  double value(const ContactPoint& pt) const {
    const auto u = flat(pt);
    double h = a + d * u[0] * u[dim] * u[2 * dim];
    for (std::size_t i = 0; i < size(); ++i) {
      h += b[i] * u[i];
      for (std::size_t j = 0; j < size(); ++j) h += 0.5 * c[i * size() + j] * u[i] * u[j];
    }
    return h;
  }
  HamiltonianJet jet(const ContactPoint& pt) const {
    const auto u = flat(pt);
    std::vector<double> g(b);
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) g[i] += c[i * size() + j] * u[j];
    }
    g[0] += d * u[dim] * u[2 * dim];
    g[dim] += d * u[0] * u[2 * dim];
    g[2 * dim] += d * u[0] * u[dim];
    HamiltonianJet j;
    j.value = value(pt);
    j.dx.assign(g.begin(), g.begin() + static_cast<long>(dim));
    j.dy.assign(g.begin() + static_cast<long>(dim), g.begin() + static_cast<long>(2 * dim));
    j.dz = g[2 * dim];
    return j;
  }
};

PolyHamiltonian random_hamiltonian(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PolyHamiltonian h{dim, u(rng), random_vector(2 * dim + 1, rng), {}, u(rng)};
  const std::size_t s = h.size();
  h.c.assign(s * s, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j <= i; ++j) h.c[i * s + j] = h.c[j * s + i] = u(rng);
  }
  return h;
}

ContactPoint random_point(std::size_t dim, std::mt19937_64& rng) {
  ContactPoint pt{random_vector(dim, rng), random_vector(dim, rng), 0.0};
  pt.z = random_vector(1, rng)[0];
  return pt;
}

ContactPoint shifted(const ContactPoint& pt, double eps, const Tangent& v) {
  ContactPoint out = pt;
  for (std::size_t a = 0; a < pt.x.size(); ++a) {
    out.x[a] += eps * v.x[a];
    out.y[a] += eps * v.y[a];
  }
  out.z += eps * v.z;
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> mat_vec(const std::vector<double>& m, const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i * v.size() + j] * v[j];
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("contact field of h = y is (-1, 0, 0)") {
  const ContactPoint pt{{0.3}, {0.7}, -0.2};
  const HamiltonianJet h{pt.y[0], {0.0}, {1.0}, 0.0};
  const Tangent t = contact::contact_field(h, pt);
  CHECK(t.x[0] == -1.0);
  CHECK(t.y[0] == 0.0);
  CHECK(t.z == 0.0);
}

TEST_CASE("contact field of h = z is (0, y, z)") {
  const ContactPoint pt{{0.3, -1.0}, {0.7, 2.0}, -0.2};
  const HamiltonianJet h{pt.z, {0.0, 0.0}, {0.0, 0.0}, 1.0};
  const Tangent t = contact::contact_field(h, pt);
  CHECK(t.x == std::vector<double>{0.0, 0.0});
  CHECK(t.y == pt.y);
  CHECK(t.z == pt.z);
}

TEST_CASE("derivative of h along its own field is (Rh) h") {
  std::mt19937_64 rng(11);
  const double eps = 1e-6;
  for (int draw = 0; draw < 100; ++draw) {
    const std::size_t dim = 1 + static_cast<std::size_t>(draw % 3);
    const PolyHamiltonian h = random_hamiltonian(dim, rng);
    const ContactPoint pt = random_point(dim, rng);
    const HamiltonianJet j = h.jet(pt);
    const Tangent x = contact::contact_field(j, pt);
    const double fd = (h.value(shifted(pt, eps, x)) - h.value(shifted(pt, -eps, x))) / (2.0 * eps);
    CHECK(std::abs(fd - j.dz * j.value) <= 1e-8);
  }
}

TEST_CASE("the contact form evaluates to h on the field") {
  std::mt19937_64 rng(12);
  for (int draw = 0; draw < 20; ++draw) {
    const PolyHamiltonian h = random_hamiltonian(2, rng);
    const ContactPoint pt = random_point(2, rng);
    const HamiltonianJet j = h.jet(pt);
    CHECK(std::abs(contact::contact_form(pt, contact::contact_field(j, pt)) - j.value) <= 1e-14);
  }
}

TEST_CASE("Reeb field") {
  std::mt19937_64 rng(13);
  for (std::size_t dim = 1; dim <= 4; ++dim) {
    const Tangent r = contact::reeb_field(dim);
    const ContactPoint pt = random_point(dim, rng);
    CHECK(contact::contact_form(pt, r) == 1.0);
    const Tangent v{random_vector(dim, rng), random_vector(dim, rng), 0.4};
    CHECK(contact::contact_two_form(r, v) == 0.0);
    CHECK(contact::contact_two_form(v, r) == 0.0);
  }
  // dlambda pairs dx^a with dy_a.
  const Tangent ex{{1.0}, {0.0}, 0.0};
  const Tangent ey{{0.0}, {1.0}, 0.0};
  CHECK(contact::contact_two_form(ex, ey) == 1.0);
  CHECK(contact::contact_two_form(ey, ex) == -1.0);
}

TEST_CASE("Legendre points") {
  const auto psi = half_square(2);
  const std::vector<double> x{1.0, 2.0};
  const ContactPoint pt = contact::legendre_point(*psi, x);
  CHECK(pt.y == x);
  CHECK(pt.z == 2.5);

  const PolynomialDensity quartic(1, {0.0}, {0.0}, {1.0});
  const std::vector<double> two{2.0};
  const ContactPoint q = contact::legendre_point(quartic, two);
  CHECK(q.y[0] == 8.0);
  CHECK(q.z == 4.0);
}

TEST_CASE("Legendre submanifolds annihilate the contact form") {
  std::mt19937_64 rng(14);
  const auto psi = random_density(2, rng);
  const double t = 0.7;
  const double eps = 1e-5;
  auto curve = [](double s) { return std::vector<double>{s, s}; };
  const ContactPoint a = contact::legendre_point(*psi, curve(t + eps));
  const ContactPoint b = contact::legendre_point(*psi, curve(t - eps));
  const ContactPoint c = contact::legendre_point(*psi, curve(t));
  double pull = (a.z - b.z) / (2.0 * eps);
  for (std::size_t i = 0; i < 2; ++i) pull -= c.y[i] * (a.x[i] - b.x[i]) / (2.0 * eps);
  CHECK(std::abs(pull) <= 1e-9);

  const ContactPoint ad = contact::legendre_point_dual(*psi, curve(t + eps));
  const ContactPoint bd = contact::legendre_point_dual(*psi, curve(t - eps));
  const ContactPoint cd = contact::legendre_point_dual(*psi, curve(t));
  double pull_dual = (ad.z - bd.z) / (2.0 * eps);
  for (std::size_t i = 0; i < 2; ++i) pull_dual -= cd.y[i] * (ad.x[i] - bd.x[i]) / (2.0 * eps);
  CHECK(std::abs(pull_dual) <= 1e-9);
}

TEST_CASE("dual Legendre point") {
  const auto phi = half_square(1);
  const std::vector<double> y{3.0};
  const ContactPoint pt = contact::legendre_point_dual(*phi, y);
  CHECK(pt.x[0] == 3.0);
  CHECK(pt.z == 4.5);

  // The half square is its own Legendre transform.
  const auto psi = half_square(2);
  const std::vector<double> x{0.4, -1.3};
  const ContactPoint primal = contact::legendre_point(*psi, x);
  const ContactPoint dual = contact::legendre_point_dual(*psi, psi->grad(x));
  CHECK(max_diff(primal.x, dual.x) == 0.0);
  CHECK(max_diff(primal.y, dual.y) == 0.0);
  CHECK(primal.z == doctest::Approx(dual.z).epsilon(1e-15));
}

TEST_CASE("adapted values") {
  std::mt19937_64 rng(15);
  const auto psi = random_density(3, rng);
  const std::vector<double> x = random_vector(3, rng);
  ContactPoint pt = contact::legendre_point(*psi, x);
  const contact::AdaptedValues on = contact::adapted_values(pt, *psi);
  CHECK(on.max_abs() == 0.0);

  const double eps = 1e-3;
  for (double& y : pt.y) y += eps;
  const contact::AdaptedValues off = contact::adapted_values(pt, *psi);
  CHECK(off.delta0 == 0.0);
  for (double d : off.delta) CHECK(d == doctest::Approx(-eps).epsilon(1e-9));

  const auto half = half_square(1);
  const contact::AdaptedValues sub = contact::adapted_values(ContactPoint{{1.0}, {0.0}, 0.0}, *half);
  CHECK(sub.delta0 == 0.5);
  CHECK(sub.delta[0] == 1.0);

  const contact::AdaptedValues dual = contact::adapted_values_dual(contact::legendre_point_dual(*psi, x), *psi);
  CHECK(dual.max_abs() <= 1e-15);
  const contact::AdaptedValues dual_sub = contact::adapted_values_dual(ContactPoint{{0.0}, {1.0}, 0.0}, *half);
  CHECK(dual_sub.delta0 == -0.5);
  CHECK(dual_sub.delta[0] == -1.0);
}

TEST_CASE("Gamma vanishes only at zero") {
  const contact::LinearGamma g{2.5};
  CHECK(g(0.0) == 0.0);
  CHECK(g(1e-300) != 0.0);
  CHECK(contact::LinearGamma{}.kappa == 1.0);
}

TEST_CASE("restricted field examples") {
  const auto psi = half_square(1);
  const ContactHamiltonianSpec spec{psi, {1.0}, {}};
  const ContactPoint pt{{1.0}, {1.0}, 0.5};
  // h = (x - y) + (x^2/2 - z): dh/dx = 1 + x, dh/dy = -1, dh/dz = -1.
  const Tangent t = contact::restricted_field(spec, pt);
  CHECK(t.x[0] == 1.0);
  CHECK(t.y[0] == 1.0);
  CHECK(t.z == 1.0);
  CHECK(contact::restricted_hamiltonian(spec, pt).value == 0.0);

  const Tangent d = contact::restricted_field_dual(spec, pt);
  CHECK(d.x[0] == 1.0);
  CHECK(d.y[0] == 1.0);
  CHECK(d.z == 1.0);

  std::mt19937_64 rng(16);
  const auto general = random_density(3, rng);
  const ContactHamiltonianSpec still{general, {0.0, 0.0, 0.0}, {3.0}};
  const std::vector<double> x = random_vector(3, rng);
  const Tangent zero = contact::restricted_field(still, contact::legendre_point(*general, x));
  CHECK(max_diff(zero.x, {0, 0, 0}) == 0.0);
  CHECK(max_diff(zero.y, {0, 0, 0}) == 0.0);
  CHECK(zero.z == 0.0);
  const Tangent zero_dual = contact::restricted_field_dual(still, contact::legendre_point_dual(*general, x));
  CHECK(max_diff(zero_dual.x, {0, 0, 0}) <= 1e-15);
  CHECK(max_diff(zero_dual.y, {0, 0, 0}) == 0.0);
  CHECK(std::abs(zero_dual.z) <= 1e-15);
}

TEST_CASE("rotational drift conserves the generating function") {
  const auto psi = half_square(2);
  const std::vector<double> x{0.8, -0.3};
  const ContactHamiltonianSpec spec{psi, {x[1], -x[0]}, {}};
  CHECK(contact::restricted_field(spec, contact::legendre_point(*psi, x)).z == 0.0);
  CHECK(std::abs(contact::restricted_field_dual(spec, contact::legendre_point_dual(*psi, x)).z) <= 1e-15);
}

TEST_CASE("restricted fields are push-forwards onto the submanifold") {
  std::mt19937_64 rng(17);
  for (int draw = 0; draw < 50; ++draw) {
    const std::size_t dim = 1 + static_cast<std::size_t>(draw % 4);
    const auto psi = random_density(dim, rng);
    const std::vector<double> x = random_vector(dim, rng);
    const ContactHamiltonianSpec spec{psi, random_vector(dim, rng), {0.5 + draw * 0.1}};

    const ContactPoint pt = contact::legendre_point(*psi, x);
    const Tangent t = contact::restricted_field(spec, pt);
    CHECK(max_diff(t.x, spec.drift) <= 1e-12);
    CHECK(max_diff(t.y, mat_vec(psi->hess(x), t.x)) <= 1e-12);
    CHECK(std::abs(t.z - dot(psi->grad(x), t.x)) <= 1e-12);
    CHECK(std::abs(contact::restricted_hamiltonian(spec, pt).value) <= 1e-12);

    const ContactPoint dpt = contact::legendre_point_dual(*psi, x);
    const Tangent d = contact::restricted_field_dual(spec, dpt);
    CHECK(max_diff(d.y, spec.drift) <= 1e-12);
    CHECK(max_diff(d.x, mat_vec(psi->hess(x), d.y)) <= 1e-12);
    CHECK(std::abs(d.z - dot(dpt.y, d.x)) <= 1e-12);
  }
}

TEST_CASE("restricted Hamiltonian derivatives match finite differences") {
  std::mt19937_64 rng(18);
  const auto psi = random_density(2, rng);
  const ContactHamiltonianSpec spec{psi, random_vector(2, rng), {1.7}};
  const ContactPoint pt = random_point(2, rng);
  const double eps = 1e-6;
  for (bool dual : {false, true}) {
    auto value = [&](const ContactPoint& q) {
      return dual ? contact::restricted_hamiltonian_dual(spec, q).value : contact::restricted_hamiltonian(spec, q).value;
    };
    const HamiltonianJet j = dual ? contact::restricted_hamiltonian_dual(spec, pt) : contact::restricted_hamiltonian(spec, pt);
    for (std::size_t a = 0; a < 2; ++a) {
      ContactPoint hi = pt, lo = pt;
      hi.x[a] += eps;
      lo.x[a] -= eps;
      CHECK(std::abs((value(hi) - value(lo)) / (2 * eps) - j.dx[a]) <= 1e-7);
      hi = pt;
      lo = pt;
      hi.y[a] += eps;
      lo.y[a] -= eps;
      CHECK(std::abs((value(hi) - value(lo)) / (2 * eps) - j.dy[a]) <= 1e-7);
    }
    ContactPoint hi = pt, lo = pt;
    hi.z += eps;
    lo.z -= eps;
    CHECK(std::abs((value(hi) - value(lo)) / (2 * eps) - j.dz) <= 1e-7);
  }
}

TEST_CASE("tangency: h vanishes on the submanifold so lambda(X_h) does too") {
  std::mt19937_64 rng(19);
  const auto psi = random_density(3, rng);
  const ContactHamiltonianSpec spec{psi, random_vector(3, rng), {}};
  const ContactPoint pt = contact::legendre_point(*psi, random_vector(3, rng));
  const HamiltonianJet j = contact::restricted_hamiltonian(spec, pt);
  CHECK(std::abs(contact::contact_form(pt, contact::contact_field(j, pt))) <= 1e-14);
}

TEST_CASE("points off the submanifold are rejected") {
  const auto psi = half_square(1);
  const ContactHamiltonianSpec spec{psi, {1.0}, {}};
  CHECK_THROWS_AS(contact::restricted_field(spec, ContactPoint{{1.0}, {1.0 + 1e-6}, 0.5}), std::domain_error);
  CHECK_NOTHROW(contact::restricted_field(spec, ContactPoint{{1.0}, {1.0 + 1e-12}, 0.5}));
  CHECK_THROWS_AS(contact::restricted_field_dual(spec, ContactPoint{{1.0}, {1.0}, 0.6}), std::domain_error);
  CHECK_THROWS_AS(contact::restricted_field(ContactHamiltonianSpec{psi, {1.0, 2.0}, {}}, ContactPoint{{1.0}, {1.0}, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(contact::restricted_field(ContactHamiltonianSpec{nullptr, {1.0}, {}}, ContactPoint{{1.0}, {1.0}, 0.5}),
                  std::invalid_argument);
}
