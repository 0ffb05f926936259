#include "diraclab/exterior.hpp"

#include <stdexcept>

namespace diraclab::exterior {

using mesh::AxisMask;

std::size_t num_components(int dim, int degree) {
  if (degree < 0 || degree > dim) return 0;
  std::size_t c = 1;
  for (int i = 0; i < degree; ++i) {
    c = c * static_cast<std::size_t>(dim - i) / static_cast<std::size_t>(i + 1);
  }
  return c;
}

std::size_t component_index(int dim, AxisMask axes) {
  const auto subsets = mesh::subsets_of_size(dim, mesh::popcount(axes));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (subsets[i] == axes) return i;
  }
  throw std::out_of_range("axis subset outside the dimension");
}

AxisMask component_axes(int dim, int degree, std::size_t i) {
  return mesh::subsets_of_size(dim, degree).at(i);
}

PointForm zero_form(int dim, int degree) {
  return PointForm{dim, degree, std::vector<double>(num_components(dim, degree), 0.0)};
}

int hodge_sign(int dim, AxisMask axes) {
  const AxisMask all = (AxisMask{1} << dim) - 1;
  return mesh::shuffle_sign(axes, all & ~axes);
}

PointForm wedge(const PointForm& a, const PointForm& b) {
  if (a.dim != b.dim) throw std::invalid_argument("wedge of forms in different dimensions");
  const int n = a.dim;
  PointForm out = zero_form(n, a.degree + b.degree);
  if (a.degree + b.degree > n) return out;
  const auto sa = mesh::subsets_of_size(n, a.degree);
  const auto sb = mesh::subsets_of_size(n, b.degree);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (sa[i] & sb[j]) continue;
      out.comp[component_index(n, sa[i] | sb[j])] +=
          mesh::shuffle_sign(sa[i], sb[j]) * a.comp[i] * b.comp[j];
    }
  }
  return out;
}

PointForm hodge(const PointForm& a) {
  const int n = a.dim;
  const AxisMask all = (AxisMask{1} << n) - 1;
  PointForm out = zero_form(n, n - a.degree);
  const auto sa = mesh::subsets_of_size(n, a.degree);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    out.comp[component_index(n, all & ~sa[i])] = hodge_sign(n, sa[i]) * a.comp[i];
  }
  return out;
}

PointForm hodge_inverse(const PointForm& a) {
  PointForm out = hodge(a);
  const int k = a.degree;
  if ((k * (a.dim - k)) % 2 != 0) {
    for (double& v : out.comp) v = -v;
  }
  return out;
}

}  // namespace diraclab::exterior
