#pragma once

#include <iosfwd>
#include <vector>

#include "diraclab/contact.hpp"
#include "diraclab/phs.hpp"

namespace diraclab::contact {

// Fiber point at one corner of an n-cell together with the frozen drift of the
// contact Hamiltonian density there.
//
// Coordinates per block b in {p, q}: x_b holds the coframe components of
// star^{-1} alpha_b and y_b those of the effort e_b, except for the p-block of
// the (3,1,3) signature where both are mapped through the pointwise star so
// that x_p lists the components of alpha_p itself.
struct LiftedPoint {
  ContactPoint point;
  std::vector<double> drift;
};

struct LiftedState {
  std::size_t cells = 0;
  unsigned corners = 0;
  std::vector<LiftedPoint> points;  // cell-major, corner-minor
  const LiftedPoint& at(std::size_t cell, unsigned corner) const { return points[cell * corners + corner]; }
  LiftedPoint& at(std::size_t cell, unsigned corner) { return points[cell * corners + corner]; }
};

struct CellResidual {
  double res_x = 0.0;
  double res_y = 0.0;
  double res_z = 0.0;
  double h_psi = 0.0;
};

struct LiftReport {
  std::vector<CellResidual> cells;
  double max_res_x = 0.0;
  double max_res_y = 0.0;
  double max_res_z = 0.0;
  double max_h_psi = 0.0;
};

void write_lift_csv(std::ostream& os, const LiftReport& r);

// Contact lift of a port-Hamiltonian model onto per-corner fiber coordinates.
// The energy must be block separable (no coupling between x_p and x_q).
class Lift {
 public:
  explicit Lift(phs::Model model, LinearGamma gamma = {});

  const phs::Model& model() const { return model_; }
  const density::DensityPtr& fiber_density() const { return psi_; }
  std::size_t fiber_dim() const { return dim_p_ + dim_q_; }
  std::size_t block_p_size() const { return dim_p_; }
  unsigned corners() const { return 1u << model_.mesh()->dim(); }
  const LinearGamma& gamma() const { return gamma_; }

  LiftedState lift_state(const phs::State& s) const;
  // Lift with externally reported efforts in place of the model's own.
  LiftedState lift_state(const phs::State& s, const phs::Efforts& e) const;
  ContactHamiltonianSpec hamiltonian_spec(const LiftedPoint& lp) const;
  HamiltonianJet jet(const LiftedPoint& lp) const;
  // Value of h_psi with the largest magnitude over the corners of the cell.
  double hamiltonian_density(const LiftedState& ls, std::size_t cell) const;
  LiftReport verify(const phs::State& s) const;
  // Checks reported efforts against the dynamics of the model; used for fault injection.
  LiftReport verify(const phs::State& s, const phs::Efforts& e) const;

 private:
  // Coordinates of the block (0 = p, 1 = q) from a form of effort degree.
  exterior::PointForm to_coordinates(int block, const exterior::PointForm& f) const;
  exterior::PointForm from_coordinates(int block, const exterior::PointForm& c) const;
  void fill_block(int block, const forms::Cochain& c, std::size_t cell, unsigned corner,
                  std::vector<double>& out) const;

  phs::Model model_;
  LinearGamma gamma_;
  density::DensityPtr psi_;
  std::size_t dim_p_ = 0;
  std::size_t dim_q_ = 0;
  bool hodge_coords_[2] = {false, false};
};

}  // namespace diraclab::contact
