#include <doctest.h>

#include <sstream>

#include "multifluid/csv.hpp"
#include "multifluid/error.hpp"
#include "multifluid/run.hpp"

using namespace multifluid;

namespace {

Solver1D make_solver() {
  SolverConfig cfg{MixtureSpec::from_gammas({2.0, 1.0}, {1.4, 1.67}), {}, {}, {}, {}};
  return Solver1D(cfg, Grid1D(16, 1.0));
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

}  // namespace

TEST_CASE("t_end = 0 emits only the initial snapshot") {
  Solver1D solver = make_solver();
  const FieldState s = solver.init_state(sine());
  RunOptions o;
  o.t_end = 0.0;
  o.snapshot_interval = 0.1;
  const Trajectory t = run_collect(solver, s, o);
  CHECK(t.snapshots.size() == 1);
  CHECK(t.diagnostics.size() == 1);
  CHECK(t.summary.steps == 0);
  CHECK(t.snapshots.front() == s);
}

TEST_CASE("snapshots land on their times") {
  Solver1D solver = make_solver();
  RunOptions o;
  o.t_end = 0.1;
  o.snapshot_interval = 0.025;
  const Trajectory t = run_collect(solver, solver.init_state(sine()), o);
  CHECK(t.summary.status == RunStatus::completed);
  REQUIRE(t.snapshots.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(t.snapshots[k].time == doctest::Approx(0.025 * k).epsilon(1e-12));
  CHECK(t.diagnostics.size() == t.summary.steps + 1);
  CHECK(t.summary.final_time == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("runs are deterministic") {
  Solver1D solver = make_solver();
  RunOptions o;
  o.t_end = 0.05;
  const Trajectory a = run_collect(solver, solver.init_state(sine()), o);
  const Trajectory b = run_collect(solver, solver.init_state(sine()), o);
  CHECK(a.summary.final_state == b.summary.final_state);
}

TEST_CASE("oversized fixed step is a runtime failure") {
  Solver1D solver = make_solver();
  RunOptions o;
  o.t_end = 1.0;
  o.fixed_dt = 0.5;
  const Trajectory t = run_collect(solver, solver.init_state(sine()), o);
  CHECK(t.summary.status == RunStatus::runtime_failure);
  CHECK(t.snapshots.size() == 2);
  CHECK_THROWS_AS(run_collect(solver, solver.init_state(sine()), RunOptions{-1.0}), InvalidInput);
}

TEST_CASE("csv formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    CHECK(std::stod(csv::format_double(v)) == v);
  }
  Solver1D solver = make_solver();
  std::ostringstream os;
  csv::write_snapshot(os, solver, solver.init_state(sine()));
  const std::string text = os.str();
  CHECK(text.rfind("x,rho_1,rho_2,u_1,u_2,xi_1,xi_2,p,gamma\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 17);

  std::ostringstream d;
  csv::write_diagnostics_header(d, 2);
  CHECK(d.str() == "t,mass_1,mass_2,E,D,W,energy_residual\n");
}
