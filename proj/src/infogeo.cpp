#include "diraclab/infogeo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace diraclab::infogeo {

Matrix Matrix::identity(std::size_t dim) {
  Matrix m{dim, std::vector<double>(dim * dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix dimensions differ");
  Matrix c{a.dim, std::vector<double>(a.dim * a.dim, 0.0)};
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t k = 0; k < a.dim; ++k) {
      for (std::size_t j = 0; j < a.dim; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix dimensions differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
  return m;
}

SearchBox SearchBox::cube(std::size_t dim, double half_width) {
  if (!(half_width > 0.0)) throw std::invalid_argument("search box half width must be positive");
  SearchBox b;
  b.lower.assign(dim, -half_width);
  b.upper.assign(dim, half_width);
  return b;
}

bool SearchBox::contains(const std::vector<double>& x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

double norm_inf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Objective {
  const density::Density& psi;
  const std::vector<double>& y;

  double value(const std::vector<double>& x) const {
    double s = -psi.value(x);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  }
  // y - grad psi(x)
  std::vector<double> residual(const std::vector<double>& x) const {
    std::vector<double> g = psi.grad(x);
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = y[i] - g[i];
    return g;
  }
};

enum class Outcome { converged, stalled, non_convex, left_box };

struct NewtonRun {
  Outcome outcome = Outcome::stalled;
  std::vector<double> x;
  int iterations = 0;
};

NewtonRun newton(const Objective& f, std::vector<double> x, const SearchBox& box) {
  const std::size_t n = x.size();
  const double tol = box.gradient_tolerance * std::max(1.0, norm_inf(f.y));
  NewtonRun run;
  std::vector<double> g = f.residual(x);
  double gnorm = norm_inf(g);
  int polish = 0;
  for (int it = 0; it < box.max_iterations; ++it) {
    run.iterations = it;
    if (gnorm <= tol) {
      // A couple of extra steps take the maximizer to full precision.
      if (polish++ >= 2) break;
    }
    const std::vector<double> h = f.psi.hess(x);
    Mat hm(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) hm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h[i * n + j];
    }
    Eigen::LLT<Mat> llt(hm);
    if (llt.info() != Eigen::Success) {
      if (gnorm <= tol) break;
      run.outcome = Outcome::non_convex;
      run.x = std::move(x);
      return run;
    }
    const Vec d = llt.solve(Eigen::Map<const Vec>(g.data(), static_cast<Eigen::Index>(n)));
    const double f0 = f.value(x);
    double t = 1.0;
    bool accepted = false;
    bool outside = false;
    std::vector<double> trial(n);
    while (t > 1e-12) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + t * d(static_cast<Eigen::Index>(i));
      outside = !box.contains(trial);
      if (!outside) {
        const std::vector<double> gt = f.residual(trial);
        if (f.value(trial) > f0 || norm_inf(gt) < gnorm) {
          x = trial;
          g = gt;
          gnorm = norm_inf(g);
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (gnorm <= tol) break;
      run.outcome = outside ? Outcome::left_box : Outcome::stalled;
      run.x = std::move(x);
      return run;
    }
  }
  run.outcome = gnorm <= tol ? Outcome::converged : Outcome::stalled;
  run.x = std::move(x);
  return run;
}

std::vector<double> grid_start(const Objective& f, const SearchBox& box) {
  const std::size_t n = f.y.size();
  const int per_axis = std::max(3, static_cast<int>(std::pow(2.0e5, 1.0 / static_cast<double>(n))));
  std::vector<int> idx(n, 0);
  std::vector<double> x(n), best(n);
  double best_value = -std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * idx[i] / (per_axis - 1);
    }
    const double v = f.value(x);
    if (v > best_value) {
      best_value = v;
      best = x;
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == per_axis) idx[i++] = 0;
    if (i == n) break;
  }
  return best;
}

bool near_boundary(const std::vector<double>& x, const SearchBox& box) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double margin = 1e-6 * (box.upper[i] - box.lower[i]);
    if (x[i] <= box.lower[i] + margin || x[i] >= box.upper[i] - margin) return true;
  }
  return false;
}

}  // namespace

LegendreResult legendre_transform(const density::Density& psi, const std::vector<double>& y, const SearchBox& box) {
  const std::size_t n = psi.dim();
  if (y.size() != n || box.lower.size() != n || box.upper.size() != n) {
    throw std::invalid_argument("Legendre transform dimensions do not match");
  }
  const Objective f{psi, y};
  std::vector<double> center(n);
  for (std::size_t i = 0; i < n; ++i) center[i] = 0.5 * (box.lower[i] + box.upper[i]);
  NewtonRun run = newton(f, center, box);
  if (run.outcome != Outcome::converged) {
    const std::vector<double> start = grid_start(f, box);
    if (near_boundary(start, box)) {
      throw LegendreError(LegendreError::Kind::boundary, "Legendre maximizer lies on the search box boundary");
    }
    run = newton(f, start, box);
  }
  switch (run.outcome) {
    case Outcome::converged: break;
    case Outcome::left_box:
      throw LegendreError(LegendreError::Kind::boundary, "Legendre maximizer lies outside the search box");
    case Outcome::non_convex:
      throw LegendreError(LegendreError::Kind::non_convex, "density Hessian is not positive definite");
    case Outcome::stalled:
      if (near_boundary(run.x, box)) {
        throw LegendreError(LegendreError::Kind::boundary, "Legendre maximizer lies on the search box boundary");
      }
      throw LegendreError(LegendreError::Kind::no_convergence, "Legendre transform did not converge");
  }
  if (near_boundary(run.x, box)) {
    throw LegendreError(LegendreError::Kind::boundary, "Legendre maximizer lies on the search box boundary");
  }
  // A stationary point is only the supremum where psi curves upward.
  const std::vector<double> h = psi.hess(run.x);
  const Eigen::SelfAdjointEigenSolver<Mat> eig(Eigen::Map<const Mat>(h.data(), static_cast<Eigen::Index>(n),
                                                                      static_cast<Eigen::Index>(n)));
  if (eig.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff())) {
    throw LegendreError(LegendreError::Kind::non_convex, "stationary point of the Legendre objective is not a maximum");
  }
  return LegendreResult{f.value(run.x), run.x, run.iterations};
}

LegendreDual::LegendreDual(density::DensityPtr psi, SearchBox box, double step)
    : psi_(std::move(psi)), box_(std::move(box)), step_(step) {
  if (!psi_) throw std::invalid_argument("Legendre dual needs a density");
  if (!(step_ > 0.0)) throw std::invalid_argument("difference step must be positive");
}

LegendreResult LegendreDual::solve(std::span<const double> y) const {
  return legendre_transform(*psi_, std::vector<double>(y.begin(), y.end()), box_);
}

double LegendreDual::value(std::span<const double> y) const { return solve(y).value; }

double LegendreDual::step_for(std::span<const double> y) const {
  double m = 1.0;
  for (double v : y) m = std::max(m, std::abs(v));
  return step_ * m;
}

void LegendreDual::gradient(std::span<const double> y, std::span<double> out) const {
  const std::size_t n = dim();
  const double h = step_for(y);
  std::vector<double> p(y.begin(), y.end());
  auto central = [&](std::size_t b, double s) {
    p[b] = y[b] + s;
    const double hi = value(p);
    p[b] = y[b] - s;
    const double lo = value(p);
    p[b] = y[b];
    return (hi - lo) / (2.0 * s);
  };
  for (std::size_t b = 0; b < n; ++b) out[b] = (4.0 * central(b, 0.5 * h) - central(b, h)) / 3.0;
}

void LegendreDual::hessian(std::span<const double> y, std::span<double> out) const {
  const std::size_t n = dim();
  const double h = step_for(y);
  std::vector<double> p(y.begin(), y.end());
  auto central = [&](std::size_t b, double s) {
    p[b] = y[b] + s;
    const std::vector<double> hi = solve(p).maximizer;
    p[b] = y[b] - s;
    const std::vector<double> lo = solve(p).maximizer;
    p[b] = y[b];
    std::vector<double> d(n);
    for (std::size_t a = 0; a < n; ++a) d[a] = (hi[a] - lo[a]) / (2.0 * s);
    return d;
  };
  for (std::size_t b = 0; b < n; ++b) {
    const std::vector<double> coarse = central(b, h);
    const std::vector<double> fine = central(b, 0.5 * h);
    for (std::size_t a = 0; a < n; ++a) out[a * n + b] = (4.0 * fine[a] - coarse[a]) / 3.0;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) out[a * n + b] = out[b * n + a] = 0.5 * (out[a * n + b] + out[b * n + a]);
  }
}

void LegendreDual::third(std::span<const double> y, std::span<double> out) const {
  // Plain central difference of the Hessian; accurate to about 1e-6.
  const std::size_t n = dim();
  const double h = 10.0 * step_for(y);
  std::vector<double> p(y.begin(), y.end());
  std::vector<double> hi(n * n), lo(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    p[c] = y[c] + h;
    hessian(p, hi);
    p[c] = y[c] - h;
    hessian(p, lo);
    p[c] = y[c];
    for (std::size_t ab = 0; ab < n * n; ++ab) out[ab * n + c] = (hi[ab] - lo[ab]) / (2.0 * h);
  }
}

namespace {

int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

density::DensityPtr quadratic_cotransform(const phs::EnergySpec& spec, const phs::Signature& s) {
  if (spec.kind != phs::EnergySpec::Kind::quadratic) {
    throw std::invalid_argument("closed-form cotransform needs a quadratic energy");
  }
  std::vector<double> w;
  w.insert(w.end(), static_cast<std::size_t>(binomial(s.n, s.p)), 1.0 / spec.weight_p);
  w.insert(w.end(), static_cast<std::size_t>(binomial(s.n, s.q)), 1.0 / spec.weight_q);
  return std::make_shared<const density::PolynomialDensity>(density::PolynomialDensity::diagonal(std::move(w)));
}

Matrix fiber_metric(const density::Density& psi, const std::vector<double>& x) {
  return Matrix{psi.dim(), psi.hess(x)};
}

DuallyFlatChart::DuallyFlatChart(density::DensityPtr psi, SearchBox box)
    : psi_(std::move(psi)) {
  if (!psi_) throw std::invalid_argument("chart needs a density");
  phi_ = std::make_shared<const LegendreDual>(psi_, std::move(box));
}

DuallyFlatChart::DuallyFlatChart(density::DensityPtr psi, density::DensityPtr phi)
    : psi_(std::move(psi)), phi_(std::move(phi)) {
  if (!psi_ || !phi_) throw std::invalid_argument("chart needs both densities");
  if (psi_->dim() != phi_->dim()) throw std::invalid_argument("chart densities differ in dimension");
}

Matrix DuallyFlatChart::inverse_metric(const std::vector<double>& y) const { return Matrix{dim(), phi_->hess(y)}; }

double duality_pairing_check(const DuallyFlatChart& chart, const std::vector<double>& x) {
  const Matrix product = chart.metric(x) * chart.inverse_metric(chart.dual_coordinates(x));
  return max_abs_diff(product, Matrix::identity(chart.dim()));
}

std::vector<double> alpha_connection(const density::Density& psi, const std::vector<double>& x, double alpha) {
  std::vector<double> t = psi.third_tensor(x);
  for (double& v : t) v *= 0.5 * (1.0 - alpha);
  return t;
}

double connection_identity_residual(const density::Density& psi, const std::vector<double>& x, double alpha,
                                    double step) {
  const std::size_t n = x.size();
  const std::vector<double> plus = alpha_connection(psi, x, alpha);
  const std::vector<double> minus = alpha_connection(psi, x, -alpha);
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<double> hi = x;
    std::vector<double> lo = x;
    hi[a] += step;
    lo[a] -= step;
    const std::vector<double> gh = psi.hess(hi);
    const std::vector<double> gl = psi.hess(lo);
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        const double dg = (gh[b * n + c] - gl[b * n + c]) / (2.0 * step);
        worst = std::max(worst, std::abs(dg - plus[(a * n + b) * n + c] - minus[(a * n + c) * n + b]));
      }
    }
  }
  return worst;
}

double canonical_divergence(const DuallyFlatChart& chart, const std::vector<double>& xi,
                            const std::vector<double>& xi_prime) {
  const std::vector<double> y_prime = chart.dual_coordinates(xi_prime);
  double d = chart.psi().value(xi) + chart.phi().value(y_prime);
  for (std::size_t a = 0; a < xi.size(); ++a) d -= xi[a] * y_prime[a];
  return d;
}

double pythagoras_check(const DuallyFlatChart& chart, const std::vector<double>& xi1, const std::vector<double>& xi2,
                        const std::vector<double>& xi3) {
  const std::size_t n = chart.dim();
  if (xi1.size() != n || xi2.size() != n || xi3.size() != n) {
    throw std::invalid_argument("Pythagorean triple dimensions do not match the chart");
  }
  const std::vector<double> y1 = chart.dual_coordinates(xi1);
  const std::vector<double> y2 = chart.dual_coordinates(xi2);
  // Tangent of the y-straight segment at xi2, in x-coordinates: Hess phi (y2 - y1).
  const Matrix k = chart.inverse_metric(y2);
  const Matrix g = chart.metric(xi2);
  std::vector<double> dy(n), v(n, 0.0), u(n);
  for (std::size_t a = 0; a < n; ++a) {
    dy[a] = y2[a] - y1[a];
    u[a] = xi3[a] - xi2[a];
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) v[a] += k(a, b) * dy[b];
  }
  double inner = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) inner += u[a] * g(a, b) * v[b];
  }
  if (std::abs(inner) > kOrthogonalityTolerance * std::max(1.0, norm_inf(u) * norm_inf(dy))) {
    throw std::domain_error("Pythagorean segments are not orthogonal at the middle point");
  }
  return std::abs(canonical_divergence(chart, xi3, xi1) - canonical_divergence(chart, xi3, xi2) -
                  canonical_divergence(chart, xi2, xi1));
}

void write_divergence_csv(std::ostream& os, const std::vector<DivergenceRow>& rows) {
  auto point = [](const std::vector<double>& x) {
    std::string s;
    char buf[32];
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", x[i]);
      if (i) s += ';';
      s += buf;
    }
    return s;
  };
  os << "xi,xi_prime,D\n";
  char buf[32];
  for (const DivergenceRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.divergence);
    os << point(r.xi) << ',' << point(r.xi_prime) << ',' << buf << '\n';
  }
}

}  // namespace diraclab::infogeo
