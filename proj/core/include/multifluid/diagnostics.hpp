#pragma once

// Integral quantities of the energy balance
//
//   d/dt int (sum_i rho_i u_i^2 / 2 + p / (gamma - 1)) = -D + W
//
// on a periodic grid, where D = int sum_ij (2 mu_ij + lambda_ij) u_i' u_j' is the
// viscous dissipation and W = int sum_i rho_i u_i f_i the power of the body
// forces. All integrals are cell sums times dx.

#include <cstddef>
#include <span>
#include <vector>

#include "multifluid/solver1d.hpp"

namespace multifluid {

std::vector<double> masses(const FieldState& state);

struct EnergyParts {
  double kinetic;
  double internal;
  double total() const { return kinetic + internal; }
};

EnergyParts energy(const Solver1D& solver, const FieldState& state);

/// Velocity gradients are centred differences (u[c+1] - u[c-1]) / (2 dx).
double dissipation(const Solver1D& solver, const FieldState& state);

double power_input(const Solver1D& solver, const FieldState& state);

struct EnergyBudget {
  double kinetic;
  double internal;
  double dissipation;
  double power_input;
  double residual;  ///< zero for an isolated state
};

EnergyBudget budget(const Solver1D& solver, const FieldState& state);

/// r = (E1 - E0)/dt + (D0 + D1)/2 - (W0 + W1)/2 with dt = t1 - t0.
double energy_residual(const EnergyBudget& before, const EnergyBudget& after, double dt);

/// Convenience overload evaluating both budgets. Throws InvalidInput when the
/// grids differ or t1 <= t0.
double energy_residual(const Solver1D& solver, const FieldState& before, const FieldState& after);

/// Integrated internal-energy transport identity for spatially constant gamma
/// and K: (I1 - I0)/dt + (P0 + P1)/2 with I = int p/(gamma-1) and
/// P = int p dv/dx (centred differences). Tends to zero with the mesh.
double internal_energy_transport_residual(const Solver1D& solver, const FieldState& before,
                                          const FieldState& after);

struct Bounds {
  double lo;
  double hi;
};

Bounds field_bounds(std::span<const double> field);

struct ExtremumVerdict {
  static constexpr double kTolerance = 1e-10;

  bool pass;
  double min;
  double max;
  std::size_t worst_cell;  ///< cell with the largest excursion (0 when none)
};

/// Pass iff lo - 1e-10 <= field <= hi + 1e-10 everywhere.
ExtremumVerdict extremum_check(std::span<const double> field, Bounds initial);

}  // namespace multifluid
