#include "diraclab/density.hpp"

#include <cmath>
#include <stdexcept>

namespace diraclab::density {

std::vector<double> Density::grad(std::span<const double> x) const {
  std::vector<double> out(dim());
  gradient(x, out);
  return out;
}

std::vector<double> Density::hess(std::span<const double> x) const {
  std::vector<double> out(dim() * dim());
  hessian(x, out);
  return out;
}

std::vector<double> Density::third_tensor(std::span<const double> x) const {
  std::vector<double> out(dim() * dim() * dim());
  third(x, out);
  return out;
}

PolynomialDensity::PolynomialDensity(std::size_t dim, std::vector<double> quadratic,
                                     std::vector<double> linear, std::vector<double> quartic)
    : dim_(dim), a_(std::move(quadratic)), b_(std::move(linear)), c_(std::move(quartic)) {
  if (dim_ == 0) throw std::invalid_argument("density needs at least one variable");
  if (a_.empty()) a_.assign(dim_ * dim_, 0.0);
  if (b_.empty()) b_.assign(dim_, 0.0);
  if (c_.empty()) c_.assign(dim_, 0.0);
  if (a_.size() != dim_ * dim_ || b_.size() != dim_ || c_.size() != dim_) {
    throw std::invalid_argument("density coefficient sizes do not match its dimension");
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (a_[i * dim_ + j] != a_[j * dim_ + i]) throw std::invalid_argument("quadratic coefficients must be symmetric");
    }
  }
}

PolynomialDensity PolynomialDensity::diagonal(std::vector<double> weights) {
  const std::size_t n = weights.size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = weights[i];
  return PolynomialDensity(n, std::move(a), {}, {});
}

bool PolynomialDensity::is_quadratic() const {
  for (double c : c_) {
    if (c != 0.0) return false;
  }
  return true;
}

double PolynomialDensity::value(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) ax += a_[i * dim_ + j] * x[j];
    const double x2 = x[i] * x[i];
    s += 0.5 * x[i] * ax + b_[i] * x[i] + 0.25 * c_[i] * x2 * x2;
  }
  return s;
}

void PolynomialDensity::gradient(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) ax += a_[i * dim_ + j] * x[j];
    out[i] = ax + b_[i] + c_[i] * x[i] * x[i] * x[i];
  }
}

void PolynomialDensity::hessian(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[i * dim_ + j] = a_[i * dim_ + j];
    out[i * dim_ + i] += 3.0 * c_[i] * x[i] * x[i];
  }
}

void PolynomialDensity::third(std::span<const double> x, std::span<double> out) const {
  for (double& v : out) v = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) out[(i * dim_ + i) * dim_ + i] = 6.0 * c_[i] * x[i];
}

}  // namespace diraclab::density
