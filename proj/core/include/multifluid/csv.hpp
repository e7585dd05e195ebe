#pragma once

// CSV emitters. Every file starts with a header row; floating point values
// are written with 17 significant digits so they round-trip exactly.

#include <cstddef>
#include <iosfwd>
#include <string>

#include "multifluid/adiabat.hpp"
#include "multifluid/counterexamples.hpp"
#include "multifluid/run.hpp"
#include "multifluid/solver1d.hpp"

namespace multifluid::csv {

std::string format_double(double value);

/// Columns: x, rho_1..rho_N, u_1..u_N, xi_1..xi_N, p, gamma.
void write_snapshot(std::ostream& os, const Solver1D& solver, const FieldState& state);

/// Columns: t, mass_1..mass_N, E, D, W, energy_residual.
void write_diagnostics_header(std::ostream& os, std::size_t n_constituents);
void write_diagnostics_row(std::ostream& os, const DiagnosticsRow& row);

/// Columns: V, rho, theta, p_1..p_N, p, p_simple, p_composite, heat_residual.
/// heat_residual on row k is the residual of the interval ending at sample k
/// (empty on the first row).
void write_adiabat(std::ostream& os, const AdiabatResult& result);

void write_counterexample_header(std::ostream& os);
void write_counterexample_row(std::ostream& os, const CounterexampleReport& report,
                              const IntegralResult* integral = nullptr,
                              const std::array<double, 2>* weight = nullptr);

void write_search_header(std::ostream& os);
void write_search_row(std::ostream& os, const SearchResult& result);

}  // namespace multifluid::csv
