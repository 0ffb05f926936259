#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "diraclab/density.hpp"
#include "diraclab/phs.hpp"

namespace diraclab::infogeo {

// Square matrix, row-major.
struct Matrix {
  std::size_t dim = 0;
  std::vector<double> entries;

  static Matrix identity(std::size_t dim);
  double operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
};

Matrix operator*(const Matrix& a, const Matrix& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Search region and stopping rule for the numeric Legendre transform.
struct SearchBox {
  std::vector<double> lower;
  std::vector<double> upper;
  double gradient_tolerance = 1e-12;
  int max_iterations = 200;

  static SearchBox cube(std::size_t dim, double half_width);
  bool contains(const std::vector<double>& x) const;
};

class LegendreError : public std::runtime_error {
 public:
  enum class Kind { boundary, non_convex, no_convergence };
  LegendreError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct LegendreResult {
  double value = 0.0;
  std::vector<double> maximizer;
  int iterations = 0;
};

// sup_x [x.y - psi(x)] by damped Newton on y = grad psi(x), restarted from the
// best point of a grid over the box when Newton cannot make progress.
LegendreResult legendre_transform(const density::Density& psi, const std::vector<double>& y, const SearchBox& box);

// Numeric total Legendre transform as a density of y. The gradient is a
// Richardson-extrapolated difference of transform values; the Hessian is the
// Richardson-extrapolated Jacobian of the maximizer.
class LegendreDual final : public density::Density {
 public:
  LegendreDual(density::DensityPtr psi, SearchBox box, double step = 1e-3);

  std::size_t dim() const override { return psi_->dim(); }
  double value(std::span<const double> y) const override;
  void gradient(std::span<const double> y, std::span<double> out) const override;
  void hessian(std::span<const double> y, std::span<double> out) const override;
  void third(std::span<const double> y, std::span<double> out) const override;

  LegendreResult solve(std::span<const double> y) const;
  const density::DensityPtr& primal() const { return psi_; }

 private:
  double step_for(std::span<const double> y) const;

  density::DensityPtr psi_;
  SearchBox box_;
  double step_;
};

// Closed-form transform of a quadratic energy: phi = 1/2 sum y^2 / w per block.
density::DensityPtr quadratic_cotransform(const phs::EnergySpec& spec, const phs::Signature& s);

Matrix fiber_metric(const density::Density& psi, const std::vector<double>& x);

// psi with its transform phi; phi defaults to the numeric transform.
class DuallyFlatChart {
 public:
  explicit DuallyFlatChart(density::DensityPtr psi, SearchBox box);
  DuallyFlatChart(density::DensityPtr psi, density::DensityPtr phi);

  std::size_t dim() const { return psi_->dim(); }
  const density::Density& psi() const { return *psi_; }
  const density::Density& phi() const { return *phi_; }
  std::vector<double> dual_coordinates(const std::vector<double>& x) const { return psi_->grad(x); }
  Matrix metric(const std::vector<double>& x) const { return fiber_metric(*psi_, x); }
  Matrix inverse_metric(const std::vector<double>& y) const;

 private:
  density::DensityPtr psi_;
  density::DensityPtr phi_;
};

// max |g(x) Hess phi(grad psi(x)) - I|
double duality_pairing_check(const DuallyFlatChart& chart, const std::vector<double>& x);

// Gamma^(alpha)_abc = (1 - alpha)/2 d^3 psi / dx^a dx^b dx^c, row-major in (a, b, c).
std::vector<double> alpha_connection(const density::Density& psi, const std::vector<double>& x, double alpha);

// max |d_a g_bc - Gamma^(alpha)_abc - Gamma^(-alpha)_acb| with d g from
// central differences of the metric.
double connection_identity_residual(const density::Density& psi, const std::vector<double>& x, double alpha,
                                    double step = 1e-3);

// D(xi || xi') = psi(xi) + phi(y') - x(xi).y' with y' = grad psi(xi').
double canonical_divergence(const DuallyFlatChart& chart, const std::vector<double>& xi,
                            const std::vector<double>& xi_prime);

inline constexpr double kOrthogonalityTolerance = 1e-9;

// |D(xi3||xi1) - D(xi3||xi2) - D(xi2||xi1)| for xi1-xi2 straight in y and
// xi2-xi3 straight in x. Throws std::domain_error unless the two segments are
// g-orthogonal at xi2.
double pythagoras_check(const DuallyFlatChart& chart, const std::vector<double>& xi1, const std::vector<double>& xi2,
                        const std::vector<double>& xi3);

struct DivergenceRow {
  std::vector<double> xi;
  std::vector<double> xi_prime;
  double divergence = 0.0;
};

// CSV `xi,xi_prime,D`; point coordinates are joined with ';'.
void write_divergence_csv(std::ostream& os, const std::vector<DivergenceRow>& rows);

}  // namespace diraclab::infogeo
