// Serial reference kernels against their OpenMP versions on 3D meshes.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "diraclab/phs.hpp"

using namespace diraclab;
using forms::Cochain;
using forms::Exec;

namespace {

mesh::MeshPtr cube(int n) {
  const std::vector<int> cells{n, n, n};
  const std::vector<double> lengths{1.0, 1.0, 1.0};
  return mesh::make_mesh(3, cells, lengths);
}

Cochain random_cochain(const mesh::MeshPtr& m, int degree) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Cochain c(m, degree, forms::Grid::primal);
  for (double& v : c.values()) v = u(rng);
  return c;
}

template <Exec E>
void exterior_derivative(benchmark::State& st) {
  const Cochain c = random_cochain(cube(static_cast<int>(st.range(0))), 1);
  for (auto _ : st) benchmark::DoNotOptimize(forms::exterior_derivative(c, E));
}

template <Exec E>
void hodge(benchmark::State& st) {
  const Cochain c = random_cochain(cube(static_cast<int>(st.range(0))), 1);
  for (auto _ : st) benchmark::DoNotOptimize(forms::hodge(c, E));
}

template <Exec E>
void model_rhs(benchmark::State& st) {
  const auto m = cube(static_cast<int>(st.range(0)));
  const phs::Setup setup = phs::make_preset(phs::Preset::maxwell3d_pq22, m, {});
  const phs::Model model(m, phs::signature_of(phs::Preset::maxwell3d_pq22), setup.spec,
                         phs::BoundaryMode::reflecting, E);
  for (auto _ : st) benchmark::DoNotOptimize(model.rhs(setup.state));
}

}  // namespace

BENCHMARK(exterior_derivative<Exec::serial>)->Name("exterior_derivative/serial")->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(exterior_derivative<Exec::parallel>)->Name("exterior_derivative/parallel")->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(hodge<Exec::serial>)->Name("hodge/serial")->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(hodge<Exec::parallel>)->Name("hodge/parallel")->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(model_rhs<Exec::serial>)->Name("model_rhs/serial")->Arg(16)->Arg(32);
BENCHMARK(model_rhs<Exec::parallel>)->Name("model_rhs/parallel")->Arg(16)->Arg(32);

BENCHMARK_MAIN();
