#include "multifluid/csv.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace multifluid::csv {

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                    std::chars_format::general, 17);
  return {buffer.data(), result.ptr};
}

namespace {

void numbered(std::ostream& os, const char* prefix, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) os << ',' << prefix << i;
}

}  // namespace

void write_snapshot(std::ostream& os, const Solver1D& solver, const FieldState& state) {
  const std::size_t n = state.n_constituents();
  os << 'x';
  numbered(os, "rho_", n);
  numbered(os, "u_", n);
  numbered(os, "xi_", n);
  os << ",p,gamma\n";
  const Primitives prim = solver.primitives(state);
  for (std::size_t c = 0; c < state.n_cells(); ++c) {
    os << format_double(state.grid.center(c));
    for (std::size_t i = 0; i < n; ++i) os << ',' << format_double(state.rho(i, c));
    for (std::size_t i = 0; i < n; ++i) os << ',' << format_double(prim.velocity(i, c));
    for (std::size_t i = 0; i < n; ++i) os << ',' << format_double(prim.concentration(i, c));
    os << ',' << format_double(prim.pressure[c]) << ',' << format_double(prim.gamma[c]) << '\n';
  }
}

void write_diagnostics_header(std::ostream& os, std::size_t n_constituents) {
  os << 't';
  numbered(os, "mass_", n_constituents);
  os << ",E,D,W,energy_residual\n";
}

void write_diagnostics_row(std::ostream& os, const DiagnosticsRow& row) {
  os << format_double(row.time);
  for (double m : row.masses) os << ',' << format_double(m);
  os << ',' << format_double(row.energy) << ',' << format_double(row.dissipation) << ','
     << format_double(row.power_input) << ',' << format_double(row.energy_residual) << '\n';
}

void write_adiabat(std::ostream& os, const AdiabatResult& result) {
  const std::size_t n = result.samples.empty() ? 0 : result.samples.front().partial_pressures.size();
  os << "V,rho,theta";
  numbered(os, "p_", n);
  os << ",p,p_simple,p_composite,heat_residual\n";
  for (std::size_t k = 0; k < result.samples.size(); ++k) {
    const AdiabatSample& s = result.samples[k];
    os << format_double(s.volume) << ',' << format_double(s.density) << ','
       << format_double(s.temperature);
    for (double p : s.partial_pressures) os << ',' << format_double(p);
    os << ',' << format_double(s.pressure) << ',' << format_double(s.pressure_simple) << ','
       << format_double(s.pressure_composite) << ',';
    if (k > 0) os << format_double(result.heat_residuals[k - 1]);
    os << '\n';
  }
}

void write_counterexample_header(std::ostream& os) {
  os << "case,M1,M2,gamma,epsilon,ratio,rho1,tilde_rho1,rho2,tilde_rho2,"
        "rho1_1,rho1_2,rho2_1,rho2_2,p1,p2,product_tilde,product_total,"
        "components_positive,violated,w1,w2,integral\n";
}

void write_counterexample_row(std::ostream& os, const CounterexampleReport& r,
                              const IntegralResult* integral, const std::array<double, 2>* weight) {
  const auto& a = r.states[0];
  const auto& b = r.states[1];
  os << to_string(r.which) << ',' << format_double(r.m1) << ',' << format_double(r.m2) << ','
     << format_double(r.gamma) << ',' << format_double(r.epsilon) << ',' << format_double(r.ratio)
     << ',' << format_double(a.rho) << ',' << format_double(a.tilde_rho) << ','
     << format_double(b.rho) << ',' << format_double(b.tilde_rho) << ','
     << format_double(a.components[0]) << ',' << format_double(a.components[1]) << ','
     << format_double(b.components[0]) << ',' << format_double(b.components[1]) << ','
     << format_double(a.pressure) << ',' << format_double(b.pressure) << ','
     << format_double(r.product_tilde) << ',' << format_double(r.product_total) << ','
     << (r.components_positive ? 1 : 0) << ',' << (r.violated() ? 1 : 0) << ',';
  if (weight) os << format_double((*weight)[0]) << ',' << format_double((*weight)[1]);
  else os << ',';
  os << ',';
  if (integral) os << format_double(integral->value);
  os << '\n';
}

void write_search_header(std::ostream& os) {
  os << "found,draws,case,M1,M2,gamma,w1,w2,integral\n";
}

void write_search_row(std::ostream& os, const SearchResult& r) {
  os << (r.found ? 1 : 0) << ',' << r.draws << ',';
  if (!r.found) {
    os << ",,,,,,\n";
    return;
  }
  os << to_string(r.which) << ',' << format_double(r.m1) << ',' << format_double(r.m2) << ','
     << format_double(r.gamma) << ',' << format_double(r.weight[0]) << ','
     << format_double(r.weight[1]) << ',' << format_double(r.integral) << '\n';
}

}  // namespace multifluid::csv
