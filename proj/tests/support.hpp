#pragma once

#include <random>
#include <vector>

#include "diraclab/forms.hpp"
#include "diraclab/mesh.hpp"

namespace testsupport {

using diraclab::forms::Cochain;
using diraclab::forms::Grid;
using diraclab::mesh::MeshPtr;

inline MeshPtr cube_mesh(int dim, int cells, double length = 1.0) {
  std::vector<int> c(static_cast<std::size_t>(dim), cells);
  std::vector<double> l(static_cast<std::size_t>(dim), length);
  return diraclab::mesh::make_mesh(dim, c, l);
}

inline MeshPtr box_mesh(std::vector<int> cells, std::vector<double> lengths) {
  return diraclab::mesh::make_mesh(static_cast<int>(cells.size()), cells, lengths);
}

inline Cochain random_cochain(const MeshPtr& m, int degree, Grid grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Cochain c(m, degree, grid);
  for (double& v : c.values()) v = u(rng);
  return c;
}

}  // namespace testsupport
