#include "multifluid/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "multifluid/error.hpp"

namespace multifluid {

std::vector<double> masses(const FieldState& state) {
  const double dx = state.grid.dx();
  std::vector<double> out(state.n_constituents(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double sum = 0.0;
    for (double rho : state.rho.constituent(i)) sum += rho;
    out[i] = sum * dx;
  }
  return out;
}

namespace {

EnergyParts energy_from(const FieldState& state, const Primitives& prim) {
  const double dx = state.grid.dx();
  double kinetic = 0.0;
  double internal = 0.0;
  for (std::size_t c = 0; c < state.n_cells(); ++c) {
    for (std::size_t i = 0; i < state.n_constituents(); ++i) {
      kinetic += 0.5 * state.momentum(i, c) * prim.velocity(i, c);
    }
    if (!(prim.gamma[c] > 1.0)) throw InvalidInput("energy needs gamma > 1");
    internal += prim.pressure[c] / (prim.gamma[c] - 1.0);
  }
  return {kinetic * dx, internal * dx};
}

double dissipation_from(const Solver1D& solver, const FieldState& state, const Primitives& prim) {
  const std::vector<Matrix> coeff = solver.stress_coefficients(prim);
  if (coeff.empty()) return 0.0;
  const Grid1D& grid = state.grid;
  const double dx = grid.dx();
  const std::size_t n = state.n_constituents();
  Eigen::VectorXd grad(static_cast<Eigen::Index>(n));
  double total = 0.0;
  for (std::size_t c = 0; c < state.n_cells(); ++c) {
    const std::size_t l = grid.left(c);
    const std::size_t r = grid.right(c);
    for (std::size_t i = 0; i < n; ++i) {
      grad(static_cast<Eigen::Index>(i)) = (prim.velocity(i, r) - prim.velocity(i, l)) / (2.0 * dx);
    }
    const Matrix& a = coeff.size() == 1 ? coeff.front() : coeff[c];
    total += grad.dot(a * grad);
  }
  return total * dx;
}

double power_from(const Solver1D& solver, const FieldState& state) {
  const ForceSpec& forces = solver.config().forces;
  if (forces.waveform == ForceWaveform::zero) return 0.0;
  const Grid1D& grid = state.grid;
  double total = 0.0;
  for (std::size_t c = 0; c < state.n_cells(); ++c) {
    const double x = grid.center(c);
    for (std::size_t i = 0; i < state.n_constituents(); ++i) {
      total += state.momentum(i, c) * forces.value(i, x, grid.length());
    }
  }
  return total * grid.dx();
}

void check_pair(const FieldState& before, const FieldState& after) {
  if (!(before.grid == after.grid) || before.n_constituents() != after.n_constituents()) {
    throw InvalidInput("energy residual needs states on the same grid");
  }
  if (!(after.time > before.time)) throw InvalidInput("energy residual needs increasing times");
}

}  // namespace

EnergyParts energy(const Solver1D& solver, const FieldState& state) {
  return energy_from(state, solver.primitives(state));
}

double dissipation(const Solver1D& solver, const FieldState& state) {
  return dissipation_from(solver, state, solver.primitives(state));
}

double power_input(const Solver1D& solver, const FieldState& state) {
  return power_from(solver, state);
}

EnergyBudget budget(const Solver1D& solver, const FieldState& state) {
  const Primitives prim = solver.primitives(state);
  const EnergyParts e = energy_from(state, prim);
  return {e.kinetic, e.internal, dissipation_from(solver, state, prim), power_from(solver, state),
          0.0};
}

double energy_residual(const EnergyBudget& before, const EnergyBudget& after, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("energy residual needs a positive time step");
  const double e0 = before.kinetic + before.internal;
  const double e1 = after.kinetic + after.internal;
  return (e1 - e0) / dt + 0.5 * (before.dissipation + after.dissipation) -
         0.5 * (before.power_input + after.power_input);
}

double energy_residual(const Solver1D& solver, const FieldState& before, const FieldState& after) {
  check_pair(before, after);
  return energy_residual(budget(solver, before), budget(solver, after), after.time - before.time);
}

double internal_energy_transport_residual(const Solver1D& solver, const FieldState& before,
                                          const FieldState& after) {
  check_pair(before, after);
  auto terms = [&](const FieldState& s) {
    const Primitives prim = solver.primitives(s);
    const Grid1D& grid = s.grid;
    const double dx = grid.dx();
    double internal = 0.0;
    double work = 0.0;
    for (std::size_t c = 0; c < s.n_cells(); ++c) {
      internal += prim.pressure[c] / (prim.gamma[c] - 1.0);
      const double dv = (prim.average_velocity[grid.right(c)] - prim.average_velocity[grid.left(c)]) /
                        (2.0 * dx);
      work += prim.pressure[c] * dv;
    }
    return std::pair{internal * dx, work * dx};
  };
  const auto [i0, w0] = terms(before);
  const auto [i1, w1] = terms(after);
  return (i1 - i0) / (after.time - before.time) + 0.5 * (w0 + w1);
}

Bounds field_bounds(std::span<const double> field) {
  if (field.empty()) throw InvalidInput("field is empty");
  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  return {*lo, *hi};
}

ExtremumVerdict extremum_check(std::span<const double> field, Bounds initial) {
  ExtremumVerdict out{true, initial.lo, initial.hi, 0};
  if (field.empty()) return out;
  const Bounds actual = field_bounds(field);
  out.min = actual.lo;
  out.max = actual.hi;
  double worst = 0.0;
  for (std::size_t c = 0; c < field.size(); ++c) {
    const double excursion = std::max(initial.lo - field[c], field[c] - initial.hi);
    if (excursion > worst) {
      worst = excursion;
      out.worst_cell = c;
    }
  }
  out.pass = worst <= ExtremumVerdict::kTolerance;
  return out;
}

}  // namespace multifluid
