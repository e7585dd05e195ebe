// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multifluid/adiabat.hpp"
#include "multifluid/counterexamples.hpp"
#include "multifluid/csv.hpp"
#include "multifluid/diagnostics.hpp"
#include "multifluid/error.hpp"
#include "multifluid/mixture.hpp"
#include "multifluid/run.hpp"
#include "multifluid/viscosity.hpp"

using namespace multifluid;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Independent evaluation of the first construction in extended precision.
long double tilde_product_oracle(long double m1, long double m2, long double gamma) {
  const long double eps = std::sqrt(m1 * m2) / 3.0L * (m1 - m2) / (m1 + m2);
  const long double t1 = 1.0L;
  const long double t2 = std::pow(m1 / m2, (gamma - 1.0L) / (2.0L * gamma));
  const long double r1 = m1 - eps;
  const long double r2 = (m2 + eps) * t2;
  const long double p1 = std::pow(r1, gamma - 1.0L) * t1;
  const long double p2 = std::pow(r2, gamma - 1.0L) * t2;
  return (p2 - p1) * (t2 - t1);
}

long double total_product_oracle(long double m1, long double m2, long double gamma, long double r) {
  const long double eps = (m1 - r * m2) / (1.0L + r);
  const long double t2 = std::pow(m1 / m2, (gamma - 1.0L) / (2.0L * gamma));
  const long double r1 = m1 - eps;
  const long double r2 = (m2 + eps) * t2;
  const long double p1 = std::pow(r1, gamma - 1.0L);
  const long double p2 = std::pow(r2, gamma - 1.0L) * t2;
  return (p2 - p1) * (r2 - r1);
}

bool all_positive(const CounterexampleReport& r) {
  for (const auto& s : r.states) {
    if (!(s.components[0] > 0.0 && s.components[1] > 0.0)) return false;
  }
  return true;
}

// 1 ------------------------------------------------------------------------
Outcome criterion_tilde() {
  Outcome o;
  auto t0 = Clock::now();
  const CounterexampleReport r = case_tilde_rho(2.0, 1.0, 2.0);
  const double single = seconds_since(t0);
  const double oracle = static_cast<double>(tilde_product_oracle(2.0L, 1.0L, 2.0L));
  o.require(rel_err(r.epsilon, std::sqrt(2.0) / 9.0) < 1e-14, "epsilon = sqrt(2)/9");
  o.require(rel_err(r.product_tilde, oracle) < 1e-10, "product vs re-evaluation");
  o.require(rel_err(r.product_tilde, -0.039057906522244077208) < 1e-10, "product vs frozen value");
  o.require(all_positive(r), "reconstructed densities positive");
  o.require(single < 1e-3, "single evaluation < 1 ms");
  o.note("product " + fmt(r.product_tilde, 12) + " in " + fmt(single * 1e6, 3) + " us");

  t0 = Clock::now();
  std::size_t bad = 0;
  for (int a = 0; a < 100; ++a) {
    const double q = 1.01 * std::pow(100.0 / 1.01, a / 99.0);
    for (int b = 0; b < 100; ++b) {
      const double gamma = 1.05 + (5.0 - 1.05) * b / 99.0;
      const CounterexampleReport s = case_tilde_rho(q, 1.0, gamma);
      if (!(s.product_tilde < 0.0 && all_positive(s))) ++bad;
    }
  }
  const double sweep = seconds_since(t0);
  o.require(bad == 0, std::to_string(bad) + " sweep points without a violation");
  o.require(sweep < 1.0, "sweep < 1 s");
  o.note("sweep 10^4 points in " + fmt(sweep * 1e3, 3) + " ms");
  return o;
}

// 2 ------------------------------------------------------------------------
Outcome criterion_total() {
  Outcome o;
  const CounterexampleReport r = case_total_rho(2.0, 1.0, 2.0, 1.3);
  const double oracle = static_cast<double>(total_product_oracle(2.0L, 1.0L, 2.0L, 1.3L));
  o.require(rel_err(r.product_total, oracle) < 1e-10, "product vs re-evaluation");
  o.require(rel_err(r.product_total, -0.021528629627634551420) < 1e-10, "product vs frozen value");
  o.require(r.epsilon > 0.0 && r.epsilon < 1.0, "epsilon in (0, M1 - M2)");
  o.require(all_positive(r), "reconstructed densities positive");
  const RatioBounds b = total_rho_ratio_bounds(2.0, 1.0, 2.0);
  for (double edge : {b.lower, b.upper}) {
    bool rejected = false;
    try {
      case_total_rho(2.0, 1.0, 2.0, edge);
    } catch (const InvalidInput&) {
      rejected = true;
    }
    o.require(rejected, "boundary ratio " + fmt(edge, 17) + " rejected");
  }
  o.note("product " + fmt(r.product_total, 12) + ", epsilon " + fmt(r.epsilon, 12));
  return o;
}

// 3 ------------------------------------------------------------------------
Outcome criterion_integral() {
  Outcome o;
  const std::vector<std::pair<std::string, WeightSpec>> weights = {
      {"(1,0)", WeightSpec::constant(1.0, 0.0)},
      {"(0,1)", WeightSpec::constant(0.0, 1.0)},
      {"(1,1)", WeightSpec::constant(1.0, 1.0)},
      {"(1/M1,1/M2)", WeightSpec::inverse_molar()},
  };
  for (const auto& [name, w] : weights) {
    const SearchResult hit = weight_search(w, {1.5, 20.0}, {0.5, 1.5}, {1.05, 5.0}, 10000, 0);
    const SearchResult again = weight_search(w, {1.5, 20.0}, {0.5, 1.5}, {1.05, 5.0}, 10000, 0);
    o.require(hit.found, name + " search found a tuple");
    if (!hit.found) continue;
    o.require(again.m1 == hit.m1 && again.m2 == hit.m2 && again.gamma == hit.gamma && again.integral == hit.integral,
              name + " search reproducible");
    const CounterexampleReport rep = hit.which == CounterexampleCase::tilde_rho
                                         ? case_tilde_rho(hit.m1, hit.m2, hit.gamma)
                                         : case_total_rho(hit.m1, hit.m2, hit.gamma);
    for (double measure : {1.0, 2.5}) {
      const IntegralResult res = integral_counterexample(rep, hit.weight, measure);
      o.require(res.masses_equal, name + " componentwise mass equality");
      const double pointwise = (rep.states[0].pressure - rep.states[1].pressure) *
                               (hit.weight[0] * (rep.states[0].components[0] - rep.states[1].components[0]) +
                                hit.weight[1] * (rep.states[0].components[1] - rep.states[1].components[1]));
      o.require(std::abs(res.value - measure * pointwise) <= 1e-12 * std::max(1.0, std::abs(res.value)),
                name + " integral = |Omega| x pointwise product");
      o.require(res.value < 0.0, name + " integral negative");
    }
    o.note(name + ": " + to_string(hit.which) + " M1=" + fmt(hit.m1, 4) + " M2=" + fmt(hit.m2, 4) +
           " gamma=" + fmt(hit.gamma, 4) + " -> " + fmt(hit.integral, 4));
  }
  return o;
}

MixtureSpec adiabat_mixture() {
  return MixtureSpec::from_degrees_of_freedom({0.028, 0.004, 0.044}, {5.0, 3.0, 6.0}, {}, 8.314462618,
                                              ReferenceState{{1.0, 0.1, 0.4}, 300.0, 1.0});
}

// 4 ------------------------------------------------------------------------
Outcome criterion_pressure_forms() {
  Outcome o;
  double worst = 0.0;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> molar{0.002 + 0.05 * unit(rng), 0.002 + 0.05 * unit(rng)};
    const std::vector<double> nu{3.0 + 4.0 * unit(rng), 3.0 + 4.0 * unit(rng)};
    const ReferenceState ref{{0.1 + 2 * unit(rng), 0.1 + 2 * unit(rng)}, 200.0 + 200 * unit(rng),
                             0.5 + unit(rng)};
    const auto spec = MixtureSpec::from_degrees_of_freedom(molar, nu, {}, 8.314462618, ref);
    const AdiabatResult r = adiabat_process(spec, uniform_volume_grid(0.1, 10.0, 200));
    for (const AdiabatSample& s : r.samples) {
      worst = std::max(worst, rel_err(s.pressure_simple, s.pressure_composite));
      worst = std::max(worst, rel_err(s.pressure_simple, s.pressure));
    }
  }
  o.require(worst <= 1e-12, "relative mismatch <= 1e-12");
  o.note("max relative mismatch " + fmt(worst, 3) + " over 20 mixtures x 200 samples");
  return o;
}

// 5 ------------------------------------------------------------------------
Outcome criterion_heat_residual() {
  Outcome o;
  const MixtureSpec spec = adiabat_mixture();
  std::vector<double> worst;
  for (std::size_t intervals : {10u, 20u, 40u, 80u, 160u}) {
    worst.push_back(adiabat_process(spec, uniform_volume_grid(0.5, 2.0, intervals + 1)).max_abs_heat_residual());
  }
  std::string ratios;
  for (std::size_t k = 1; k < worst.size(); ++k) {
    const double ratio = worst[k - 1] / worst[k];
    o.require(ratio >= 3.8, "ratio " + fmt(ratio, 4) + " at level " + std::to_string(k));
    ratios += (k > 1 ? ", " : "") + fmt(ratio, 4);
  }
  o.note("per-step residual ratios " + ratios);
  return o;
}

// 6 ------------------------------------------------------------------------
Outcome criterion_gamma_range() {
  Outcome o;
  std::mt19937_64 rng(6);
  const auto t0 = Clock::now();
  std::size_t out_of_range = 0, not_common = 0;
  for (int k = 0; k < 100000; ++k) {
    const double g1 = 1.01 + 3.0 * unit(rng);
    const double g2 = (k % 10 == 0) ? g1 : 1.01 + 3.0 * unit(rng);
    const auto spec = MixtureSpec::from_gammas({0.1 + 50 * unit(rng), 0.1 + 50 * unit(rng)}, {g1, g2});
    const double x = unit(rng);
    const double gamma = adiabatic_index(ConcentrationVector({x, 1.0 - x}), spec);
    if (gamma < spec.gamma_min() || gamma > spec.gamma_max()) ++out_of_range;
    if (g1 == g2 && gamma != g1) ++not_common;
  }
  const double elapsed = seconds_since(t0);
  o.require(out_of_range == 0, std::to_string(out_of_range) + " points outside [gamma_min, gamma_max]");
  o.require(not_common == 0, std::to_string(not_common) + " equal-gamma points not exact");
  o.require(elapsed < 1.0, "runtime < 1 s");
  o.note("10^5 points in " + fmt(elapsed * 1e3, 3) + " ms");
  return o;
}

// 7 ------------------------------------------------------------------------
Outcome criterion_viscosity() {
  Outcome o;
  std::mt19937_64 rng(7);
  double worst_identity = 0.0;
  double min_eig = 1e300;
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = 2 + k % 3;
    ViscosityModel model;
    std::vector<double> w(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      model.pure_viscosities.push_back(1e-3 + 10 * unit(rng));
      w[i] = 1e-3 + unit(rng);
      sum += w[i];
    }
    for (double& x : w) x /= sum;
    const ConcentrationVector xi(w);
    const Matrix m = shear_matrix(model, xi);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      double expected = model.pure_viscosities[i] * xi[i] * xi[i];
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (j != ii) expected += m(ii, j);
      }
      worst_identity = std::max(worst_identity, std::abs(m(ii, ii) - expected) / std::max(1.0, std::abs(expected)));
    }
    min_eig = std::min(min_eig, symmetric_eigenvalues(m)(0));
  }
  ViscosityModel worked;
  worked.pure_viscosities = {4.0, 1.0};
  Matrix expected(2, 2);
  expected << 1.5, 0.5, 0.5, 0.75;
  o.require(shear_matrix(worked, ConcentrationVector({0.5, 0.5})) == expected, "worked case exact");
  o.require(worst_identity <= 1e-12, "diagonal identity within 1e-12");
  o.require(min_eig > 0.0, "symmetric part positive definite");
  o.note("identity error " + fmt(worst_identity, 3) + ", smallest eigenvalue " + fmt(min_eig, 3));
  return o;
}

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

SolverConfig two_fluid(Matrix shear) {
  SolverConfig cfg{MixtureSpec::from_gammas({2.0, 1.0}, {1.4, 1.67}), {}, {}, {}, {}};
  cfg.viscosity.kind = ViscosityKind::constant;
  cfg.viscosity.constant = make_constant_matrices(std::move(shear));
  return cfg;
}

// 8 ------------------------------------------------------------------------
Outcome criterion_conservation() {
  Outcome o;
  const auto t0 = Clock::now();
  Solver1D solver(two_fluid(mat2(0.002, 0.0005, 0.0005, 0.001)), Grid1D(256, 1.0));
  InitialProfile p;
  p.kind = ProfileKind::random;
  p.rho = {1.0, 0.5};
  p.rho_amplitude = {0.3, 0.3};
  p.u = {0.0, 0.0};
  p.u_amplitude = {0.2, 0.2};
  p.seed = 8;
  const FieldState initial = solver.init_state(p);
  const std::vector<double> m0 = masses(initial);
  const Primitives p0 = solver.primitives(initial);
  const Bounds b0 = field_bounds(p0.concentration.constituent(0));
  const Bounds b1 = field_bounds(p0.concentration.constituent(1));

  RunOptions opts;
  opts.t_end = 1.0;
  opts.cfl = 0.5;
  double drift = 0.0, sum_err = 0.0;
  bool max_principle = true;
  RunObserver obs;
  obs.on_diagnostics = [&](const DiagnosticsRow& row) {
    for (std::size_t i = 0; i < m0.size(); ++i) drift = std::max(drift, std::abs(row.masses[i] - m0[i]) / m0[i]);
  };
  std::size_t checked = 0;
  obs.on_snapshot = [&](const FieldState& s, std::size_t) {
    const Primitives pr = solver.primitives(s);
    for (std::size_t c = 0; c < s.n_cells(); ++c) {
      sum_err = std::max(sum_err, std::abs(pr.concentration(0, c) + pr.concentration(1, c) - 1.0));
    }
    max_principle = max_principle && extremum_check(pr.concentration.constituent(0), b0).pass &&
                    extremum_check(pr.concentration.constituent(1), b1).pass;
    ++checked;
  };
  opts.snapshot_interval = 0.01;
  const RunSummary summary = run(solver, initial, opts, obs);
  const double elapsed = seconds_since(t0);
  o.require(summary.status == RunStatus::completed, "run completed");
  o.require(summary.steps >= 1000, "at least 1000 steps");
  o.require(drift <= 1e-12, "mass drift <= 1e-12");
  o.require(sum_err <= 1e-12, "sum of concentrations within 1e-12");
  o.require(max_principle, "concentrations within initial bounds +- 1e-10");
  o.require(elapsed < 10.0, "runtime < 10 s");
  o.note(std::to_string(summary.steps) + " steps, drift " + fmt(drift, 3) + ", |sum xi - 1| " + fmt(sum_err, 3) +
         ", " + std::to_string(checked) + " snapshots checked, " + fmt(elapsed, 3) + " s");
  return o;
}

// 9 ------------------------------------------------------------------------
Outcome criterion_energy() {
  Outcome o;
  const auto t0 = Clock::now();
  const Matrix shear = mat2(0.002, 0.0005, 0.0005, 0.001);
  const Matrix second = mat2(-0.0005, 0.0, 0.0, -0.0002);
  const ViscosityMatrices vm = make_constant_matrices(shear, second);
  o.require(bulk_constraint_check(vm).pass(), "matrices pass positivity checks");

  std::vector<double> mean_residual;
  bool monotone = true;
  for (std::size_t n : {32u, 64u, 128u, 256u}) {
    SolverConfig cfg = two_fluid(shear);
    cfg.viscosity.constant = vm;
    Solver1D solver(cfg, Grid1D(n, 1.0));
    InitialProfile p;
    p.kind = ProfileKind::sine;
    p.rho = {1.0, 0.5};
    p.rho_amplitude = {0.1, 0.05};
    p.u = {0.0, 0.0};
    p.u_amplitude = {0.1, -0.1};
    RunOptions opts;
    opts.t_end = 0.5;
    opts.fixed_dt = 0.2 / static_cast<double>(n);
    double sum = 0.0, prev = 0.0;
    std::size_t rows = 0;
    RunObserver obs;
    obs.on_diagnostics = [&](const DiagnosticsRow& row) {
      if (rows > 0) {
        sum += std::abs(row.energy_residual);
        if (row.energy > prev) monotone = false;
      }
      prev = row.energy;
      ++rows;
    };
    const RunSummary s = run(solver, solver.init_state(p), opts, obs);
    o.require(s.status == RunStatus::completed, "run at n = " + std::to_string(n) + " completed");
    mean_residual.push_back(sum / static_cast<double>(rows - 1));
  }
  std::string ratios;
  for (std::size_t k = 1; k < mean_residual.size(); ++k) {
    const double ratio = mean_residual[k - 1] / mean_residual[k];
    o.require(ratio >= 1.8, "residual ratio " + fmt(ratio, 4) + " at level " + std::to_string(k));
    ratios += (k > 1 ? ", " : "") + fmt(ratio, 4);
  }
  const double elapsed = seconds_since(t0);
  o.require(monotone, "energy nonincreasing");
  o.require(elapsed < 60.0, "runtime < 60 s");
  o.note("mean |r| " + fmt(mean_residual.front(), 3) + " -> " + fmt(mean_residual.back(), 3) + ", ratios " + ratios +
         ", " + fmt(elapsed, 3) + " s");
  return o;
}

// 10 -----------------------------------------------------------------------
Outcome criterion_fixed_point() {
  Outcome o;
  for (bool composite : {false, true}) {
    SolverConfig cfg = two_fluid(mat2(0.02, 0.005, 0.005, 0.01));
    if (composite) {
      cfg.pressure.law = PressureLaw::composite;
      cfg.pressure.gamma_mode = GammaMode::pointwise;
    }
    Solver1D solver(cfg, Grid1D(64, 1.0));
    InitialProfile p;
    p.rho = {1.3, 0.7};
    p.u = {0.25, -0.4};
    const FieldState start = solver.init_state(p);
    FieldState s = start;
    for (int k = 0; k < 1000; ++k) s = solver.step(s, solver.stable_dt(s, 0.5));
    o.require(s.rho == start.rho && s.momentum == start.momentum,
              std::string(composite ? "composite" : "simple") + " law state unchanged bitwise");
  }
  o.note("1000 steps, simple and composite pressure");
  return o;
}

// 11 -----------------------------------------------------------------------
std::string run_to_csv(std::uint64_t seed) {
  SolverConfig cfg = two_fluid(mat2(0.01, 0.002, 0.002, 0.01));
  cfg.forces = {ForceWaveform::sinusoid, {0.5, -0.5}, 2};
  Solver1D solver(cfg, Grid1D(64, 1.0));
  InitialProfile p;
  p.kind = ProfileKind::random;
  p.rho = {1.0, 1.0};
  p.rho_amplitude = {0.2, 0.2};
  p.u = {0.0, 0.0};
  p.u_amplitude = {0.1, 0.1};
  p.seed = seed;
  RunOptions opts;
  opts.t_end = 0.1;
  opts.snapshot_interval = 0.02;
  std::ostringstream os;
  csv::write_diagnostics_header(os, 2);
  RunObserver obs;
  obs.on_snapshot = [&](const FieldState& s, std::size_t) { csv::write_snapshot(os, solver, s); };
  obs.on_diagnostics = [&](const DiagnosticsRow& row) { csv::write_diagnostics_row(os, row); };
  run(solver, solver.init_state(p), opts, obs);
  return os.str();
}

Outcome criterion_determinism() {
  Outcome o;
  const std::string a = run_to_csv(11);
  const std::string b = run_to_csv(11);
  const std::string c = run_to_csv(12);
  o.require(a == b, "identical seed gives identical CSV");
  o.require(a != c, "different seed gives different CSV");
  o.note(std::to_string(a.size()) + " bytes compared");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1  tilde-rho counterexample", criterion_tilde},
      {"AC2  total-rho counterexample", criterion_total},
      {"AC3  integral counterexample", criterion_integral},
      {"AC4  pressure-form equivalence", criterion_pressure_forms},
      {"AC5  adiabat heat residual", criterion_heat_residual},
      {"AC6  gamma(xi) range", criterion_gamma_range},
      {"AC7  viscosity matrix", criterion_viscosity},
      {"AC8  solver conservation", criterion_conservation},
      {"AC9  energy balance", criterion_energy},
      {"AC10 fixed point", criterion_fixed_point},
      {"AC11 determinism", criterion_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(t0);
    std::printf("%s  %-32s [%8.3f s]  %s\n", out.pass ? "PASS" : "FAIL", name, elapsed, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
