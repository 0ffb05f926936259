#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace diraclab::density {

// Smooth scalar function of fiber coordinates with analytic derivatives.
// Matrices and tensors are row-major.
class Density {
 public:
  virtual ~Density() = default;
  virtual std::size_t dim() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual void gradient(std::span<const double> x, std::span<double> out) const = 0;
  virtual void hessian(std::span<const double> x, std::span<double> out) const = 0;
  virtual void third(std::span<const double> x, std::span<double> out) const = 0;

  std::vector<double> grad(std::span<const double> x) const;
  std::vector<double> hess(std::span<const double> x) const;
  std::vector<double> third_tensor(std::span<const double> x) const;
};

using DensityPtr = std::shared_ptr<const Density>;

// psi(x) = 1/2 x.A x + b.x + 1/4 sum_i c_i x_i^4 with symmetric A.
class PolynomialDensity final : public Density {
 public:
  PolynomialDensity(std::size_t dim, std::vector<double> quadratic, std::vector<double> linear,
                    std::vector<double> quartic);
  // 1/2 sum_i w_i x_i^2
  static PolynomialDensity diagonal(std::vector<double> weights);

  std::size_t dim() const override { return dim_; }
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hessian(std::span<const double> x, std::span<double> out) const override;
  void third(std::span<const double> x, std::span<double> out) const override;

  double quadratic(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
  double linear(std::size_t i) const { return b_[i]; }
  double quartic(std::size_t i) const { return c_[i]; }
  bool is_quadratic() const;

 private:
  std::size_t dim_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> c_;
};

}  // namespace diraclab::density
