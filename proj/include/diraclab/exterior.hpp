#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "diraclab/mesh.hpp"

// Pointwise exterior algebra on orthonormal coframe components.
// A k-form in n dimensions is stored as C(n,k) components, one per axis
// subset, in the order of mesh::subsets_of_size.
namespace diraclab::exterior {

struct PointForm {
  int dim = 0;
  int degree = 0;
  std::vector<double> comp;
};

std::size_t num_components(int dim, int degree);
// Position of an axis subset in the component order.
std::size_t component_index(int dim, mesh::AxisMask axes);
mesh::AxisMask component_axes(int dim, int degree, std::size_t i);

PointForm zero_form(int dim, int degree);
PointForm wedge(const PointForm& a, const PointForm& b);
PointForm hodge(const PointForm& a);
PointForm hodge_inverse(const PointForm& a);

// Sign relating the hodge of dx^S to dx^{complement}.
int hodge_sign(int dim, mesh::AxisMask axes);

}  // namespace diraclab::exterior
