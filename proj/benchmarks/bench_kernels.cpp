#include <benchmark/benchmark.h>

#include <cmath>

#include "multifluid/counterexamples.hpp"
#include "multifluid/solver1d.hpp"
#include "multifluid/viscosity.hpp"

using namespace multifluid;

namespace {

Solver1D make_solver(std::size_t cells) {
  SolverConfig cfg{MixtureSpec::from_gammas({2.0, 1.0}, {1.4, 1.67}), {}, {}, {}, {}};
  Matrix m(2, 2);
  m << 0.02, 0.005, 0.005, 0.01;
  cfg.viscosity.kind = ViscosityKind::constant;
  cfg.viscosity.constant = make_constant_matrices(m);
  return Solver1D(cfg, Grid1D(cells, 1.0));
}

InitialProfile sine() {
  InitialProfile p;
  p.kind = ProfileKind::sine;
  p.rho = {1.0, 0.5};
  p.rho_amplitude = {0.1, 0.05};
  p.u = {0.0, 0.0};
  p.u_amplitude = {0.1, -0.1};
  return p;
}

void BM_Rhs(benchmark::State& state) {
  Solver1D solver = make_solver(static_cast<std::size_t>(state.range(0)));
  const FieldState s = solver.init_state(sine());
  for (auto _ : state) benchmark::DoNotOptimize(solver.rhs(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rhs)->Arg(64)->Arg(256)->Arg(1024);

void BM_Step(benchmark::State& state) {
  Solver1D solver = make_solver(static_cast<std::size_t>(state.range(0)));
  FieldState s = solver.init_state(sine());
  const double dt = solver.stable_dt(s, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(solver.step(s, dt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(64)->Arg(256)->Arg(1024);

void BM_CounterexampleSweep(benchmark::State& state) {
  for (auto _ : state) {
    double acc = 0.0;
    for (int a = 0; a < 100; ++a) {
      const double q = 1.01 * std::pow(100.0 / 1.01, a / 99.0);
      for (int b = 0; b < 100; ++b) acc += case_tilde_rho(q, 1.0, 1.05 + 3.95 * b / 99.0).product_tilde;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_CounterexampleSweep);

void BM_ShearMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ViscosityModel model;
  model.pure_viscosities.assign(n, 1.0);
  const ConcentrationVector xi(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  for (auto _ : state) benchmark::DoNotOptimize(shear_matrix(model, xi));
}
BENCHMARK(BM_ShearMatrix)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
BENCHMARK_MAIN();
