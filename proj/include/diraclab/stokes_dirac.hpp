#pragma once

#include <memory>
#include <string>
#include <vector>

#include "diraclab/forms.hpp"

namespace diraclab::stokes_dirac {

using forms::BoundaryCochain;
using forms::Cochain;

// Degrees (n, p, q) of a Stokes-Dirac structure, with p + q = n + 1.
struct Signature {
  int n = 1;
  int p = 1;
  int q = 1;

  // Throws std::invalid_argument unless 0 <= p, q <= n and p + q = n + 1.
  void validate() const;
  int r() const { return p * q + 1; }
  // (-1)^r, the sign in front of d e_q in the flow relation.
  double r_sign() const { return r() % 2 == 0 ? 1.0 : -1.0; }
  std::string label() const;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Flow and effort variables. e_p is a dual (n-p)-cochain and e_q a primal
// (n-q)-cochain; flows f_p (primal p) and f_q (dual q) have the degrees of the
// energy variables they drive. Boundary ports live on boundary (p-1)-cells.
struct FlowEffortTuple {
  Signature signature;
  Cochain f_p;
  Cochain f_q;
  BoundaryCochain f_bnd;
  Cochain e_p;
  Cochain e_q;
  BoundaryCochain e_bnd;
};

using BoundaryPtr = std::shared_ptr<const mesh::BoundaryMesh>;

// Effort cochains of the right degrees and grids for the signature.
Cochain zero_effort_p(const mesh::MeshPtr& m, const Signature& s);
Cochain zero_effort_q(const mesh::MeshPtr& m, const Signature& s);

// f_p = (-1)^r d e_q, f_q = d e_p, f_bnd = tr e_p, e_bnd = -(-1)^(n-q) tr e_q.
FlowEffortTuple structure_map(const Cochain& e_p, const Cochain& e_q, const Signature& s,
                              BoundaryPtr boundary = nullptr);

// Boundary effort with the per-case sign (-1)^p used by the simulator. Equal
// to the structure-map e_bnd whenever p + q = n + 1.
BoundaryCochain boundary_effort(const Cochain& e_q, const Signature& s, const BoundaryPtr& boundary);

double bilinear_form(const FlowEffortTuple& a, const FlowEffortTuple& b);
// Power pairing int e_p^f_p + e_q^f_q + int_bnd e_bnd^f_bnd of a single tuple.
double power(const FlowEffortTuple& t);

// Squared Euclidean norm over every value of the tuple.
double squared_norm(const FlowEffortTuple& t);

// |bilinear_form| of the two structure-map images divided by the product of
// their norms; 0 when either norm vanishes.
double check_isotropy(const Cochain& e_p, const Cochain& e_q, const Cochain& e_p2, const Cochain& e_q2,
                      const Signature& s, BoundaryPtr boundary = nullptr);

struct DimensionCount {
  std::size_t total = 0;         // dimension of the full flow-effort space
  std::size_t image = 0;         // rank of the structure map
  std::size_t annihilator = 0;   // dimension of the pairing annihilator of the image
  double self_pairing = 0.0;     // max |bilinear form| between image basis vectors
  bool complementary() const { return image + annihilator == total; }
  bool lagrangian() const { return image == annihilator; }
};

// Dense check on a small mesh: rank of the image, its annihilator under the
// bilinear form, and the self pairing of the image.
DimensionCount dimension_count(const mesh::MeshPtr& m, const Signature& s);

}  // namespace diraclab::stokes_dirac
