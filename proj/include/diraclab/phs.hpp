#pragma once

#include <functional>
#include <string>
#include <vector>

#include "diraclab/density.hpp"
#include "diraclab/forms.hpp"
#include "diraclab/stokes_dirac.hpp"

namespace diraclab::phs {

using forms::Cochain;
using forms::Exec;
using stokes_dirac::BoundaryPtr;
using stokes_dirac::Signature;

// Energy variables: alpha_p is a primal p-cochain, alpha_q a dual q-cochain.
struct State {
  Signature signature;
  Cochain alpha_p;
  Cochain alpha_q;
  double time = 0.0;
};

struct EnergySpec {
  enum class Kind { quadratic, density };
  Kind kind = Kind::quadratic;
  // Quadratic energy 1/2 int (w_p alpha_p ^ *alpha_p + w_q alpha_q ^ *alpha_q).
  double weight_p = 1.0;
  double weight_q = 1.0;
  // Pointwise density psi(x_p, x_q), one-dimensional meshes only.
  density::DensityPtr density;

  static EnergySpec quadratic(double weight_p = 1.0, double weight_q = 1.0);
  static EnergySpec pointwise(density::DensityPtr psi);
  // Fiber density of the energy in the coordinates (x_p block, x_q block).
  density::DensityPtr fiber_density(const Signature& s) const;
};

enum class BoundaryMode { reflecting, open };
enum class Scheme { rk4, midpoint };

BoundaryMode parse_boundary_mode(const std::string& name);
Scheme parse_scheme(const std::string& name);
std::string to_string(BoundaryMode m);
std::string to_string(Scheme s);

// Co-energy variables: e_p is a dual (n-p)-cochain, e_q a primal (n-q)-cochain.
struct Efforts {
  Cochain e_p;
  Cochain e_q;
};

struct Rates {
  Cochain dalpha_p;
  Cochain dalpha_q;
};

struct PowerBalanceReport {
  double energy = 0.0;
  double dE_dt = 0.0;
  double boundary_flux = 0.0;
  double residual = 0.0;
  // residual / max(E, |dE_dt|, |flux|), 0 when all three vanish.
  double relative_residual = 0.0;
  double time = 0.0;
};

class Model {
 public:
  Model(mesh::MeshPtr mesh, Signature signature, EnergySpec spec, BoundaryMode mode = BoundaryMode::reflecting,
        Exec exec = Exec::parallel);

  const mesh::MeshPtr& mesh() const { return mesh_; }
  const BoundaryPtr& boundary() const { return boundary_; }
  const Signature& signature() const { return signature_; }
  const EnergySpec& spec() const { return spec_; }
  BoundaryMode mode() const { return mode_; }
  Exec exec() const { return exec_; }
  // Carriers of e_q on the boundary; these efforts are held at zero when reflecting.
  const std::vector<std::size_t>& clamped() const { return clamped_; }

  State zero_state() const;
  double energy(const State& s) const;
  // Functional derivatives of the energy, with the boundary constraint applied.
  Efforts effort(const State& s) const;
  Rates rhs(const State& s) const;
  // Time derivative of the efforts along the given rates (chain rule through the energy).
  Efforts effort_rate(const State& s, const Rates& r) const;
  Rates rhs_from(const Efforts& e) const;
  State step(const State& s, double dt, Scheme scheme) const;
  PowerBalanceReport power_balance(const State& s) const;

 private:
  void check(const State& s) const;
  State advance(const State& s, const Rates& r, double dt) const;

  mesh::MeshPtr mesh_;
  BoundaryPtr boundary_;
  Signature signature_;
  EnergySpec spec_;
  BoundaryMode mode_;
  Exec exec_;
  std::vector<std::size_t> clamped_;
};

// Time step for a unit-speed wave at Courant number C = dt * sum_a 1/h_a.
double cfl_dt(const mesh::Mesh& m, double courant);

enum class Preset { telegraph1d, wave2d, maxwell3d_pq22, em3d_p1q3 };

Preset parse_preset(const std::string& name);
std::string to_string(Preset p);
Signature signature_of(Preset p);
int dimension_of(Preset p);

struct InitialCondition {
  enum class Kind { standing_wave, pulse, zero };
  Kind kind = Kind::standing_wave;
  double amplitude = 1.0;
  int mode = 1;
  // Gaussian pulse centre and width as fractions of the first axis length.
  double center = 0.85;
  double width = 0.05;
};

InitialCondition::Kind parse_initial_kind(const std::string& name);

struct Setup {
  State state;
  EnergySpec spec;
};

// Initial state whose efforts sample the closed-form field.
Setup make_preset(Preset p, const mesh::MeshPtr& m, const InitialCondition& ic,
                  EnergySpec spec = EnergySpec::quadratic());

// Cochain whose value on each carrier is fn(form axes, carrier centre) times the carrier measure.
using ComponentFn = std::function<double(mesh::AxisMask, std::span<const double>)>;
Cochain sample(const mesh::MeshPtr& m, int degree, forms::Grid grid, const ComponentFn& fn);

}  // namespace diraclab::phs
