// multifluid: command-line front end of the multi-fluid laboratory.
//
// Exit status: 0 success, 1 invalid input, 2 runtime failure, 3 counterexample
// sign not reproduced.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multifluid/adiabat.hpp"
#include "multifluid/config.hpp"
#include "multifluid/counterexamples.hpp"
#include "multifluid/csv.hpp"
#include "multifluid/error.hpp"
#include "multifluid/run.hpp"
#include "multifluid/viscosity.hpp"

namespace mf = multifluid;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitNotReproduced = 3;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw mf::InvalidInput(std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw mf::InvalidInput(std::string(what) + ": empty list");
  return out;
}

mf::Matrix parse_matrix(const std::string& text, const char* what) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_list(row, what));
  const auto n = static_cast<Eigen::Index>(rows.size());
  mf::Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      throw mf::InvalidInput(std::string(what) + ": matrix must be square, rows separated by ';'");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void print_matrix(std::ostream& os, const char* name, const mf::Matrix& m) {
  os << name << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? "  " : "") << mf::csv::format_double(m(i, j));
    }
    os << '\n';
  }
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& config_path, std::string out_dir) {
  const mf::RunConfig cfg = mf::load_config(config_path);
  mf::require_simulation(cfg);
  if (out_dir.empty()) out_dir = cfg.output_directory;
  if (out_dir.empty()) throw mf::InvalidInput("no output directory: pass --out or set output.directory");
  fs::create_directories(out_dir);

  mf::Solver1D solver(cfg.solver, *cfg.grid);
  const mf::FieldState initial = solver.init_state(*cfg.initial);

  std::ofstream diag(fs::path(out_dir) / "diagnostics.csv", std::ios::binary);
  if (!diag) throw mf::RuntimeFailure("cannot write to " + out_dir);
  mf::csv::write_diagnostics_header(diag, solver.n_constituents());

  mf::RunObserver observer;
  observer.on_snapshot = [&](const mf::FieldState& state, std::size_t index) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu.csv", index);
    std::ofstream os(fs::path(out_dir) / name, std::ios::binary);
    mf::csv::write_snapshot(os, solver, state);
  };
  observer.on_diagnostics = [&](const mf::DiagnosticsRow& row) { mf::csv::write_diagnostics_row(diag, row); };

  const mf::RunSummary summary = mf::run(solver, initial, cfg.time, observer);
  std::cout << "steps " << summary.steps << ", final time " << mf::csv::format_double(summary.final_time)
            << '\n';
  if (summary.status != mf::RunStatus::completed) {
    std::cerr << "error: " << summary.failure << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

// ---------------------------------------------------------- counterexample

struct CounterexampleArgs {
  std::string which = "tilde";
  double m1 = 2.0;
  double m2 = 1.0;
  double gamma = 2.0;
  std::optional<double> ratio;
  std::string weight = "1,0";
  std::string construction = "tilde";
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double measure = 1.0;
  std::vector<double> m1_range{1.01, 20.0};
  std::vector<double> m2_range{0.5, 10.0};
  std::vector<double> gamma_range{1.05, 5.0};
};

mf::WeightSpec parse_weight(const std::string& text) {
  if (text == "inverse" || text == "inverse_molar") return mf::WeightSpec::inverse_molar();
  const auto w = parse_list(text, "--weight");
  if (w.size() != 2) throw mf::InvalidInput("--weight needs two values or 'inverse'");
  return mf::WeightSpec::constant(w[0], w[1]);
}

void print_report(const mf::CounterexampleReport& r) {
  std::cout << "case " << mf::to_string(r.which) << ": M1 = " << mf::csv::format_double(r.m1)
            << ", M2 = " << mf::csv::format_double(r.m2) << ", gamma = " << mf::csv::format_double(r.gamma)
            << '\n'
            << "epsilon = " << mf::csv::format_double(r.epsilon) << ", ratio = " << mf::csv::format_double(r.ratio)
            << '\n';
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& s = r.states[k];
    std::cout << "state " << k + 1 << ": rho = " << mf::csv::format_double(s.rho)
              << ", tilde_rho = " << mf::csv::format_double(s.tilde_rho) << ", components = ("
              << mf::csv::format_double(s.components[0]) << ", " << mf::csv::format_double(s.components[1])
              << "), p = " << mf::csv::format_double(s.pressure) << '\n';
  }
  std::cout << "(p2 - p1)(tilde_rho2 - tilde_rho1) = " << mf::csv::format_double(r.product_tilde) << '\n'
            << "(p2 - p1)(rho2 - rho1) = " << mf::csv::format_double(r.product_total) << '\n'
            << r.verdict() << '\n';
}

int cmd_counterexample(const CounterexampleArgs& a) {
  if (a.which == "search") {
    auto range = [](const std::vector<double>& v, const char* name) {
      if (v.size() != 2) throw mf::InvalidInput(std::string(name) + " needs two values");
      return mf::ParameterRange{v[0], v[1]};
    };
    const mf::SearchResult hit =
        mf::weight_search(parse_weight(a.weight), range(a.m1_range, "--M1-range"),
                          range(a.m2_range, "--M2-range"), range(a.gamma_range, "--gamma-range"), a.samples,
                          a.seed);
    if (hit.found) {
      std::cout << "found after " << hit.draws << " draws: case " << mf::to_string(hit.which)
                << ", M1 = " << mf::csv::format_double(hit.m1) << ", M2 = " << mf::csv::format_double(hit.m2)
                << ", gamma = " << mf::csv::format_double(hit.gamma)
                << ", integral = " << mf::csv::format_double(hit.integral) << '\n';
    } else {
      std::cout << "no negative integral in " << hit.draws << " draws\n";
    }
    mf::csv::write_search_header(std::cout);
    mf::csv::write_search_row(std::cout, hit);
    return hit.found ? kExitOk : kExitNotReproduced;
  }

  std::string construction = a.which;
  if (a.which == "integral") construction = a.construction;
  mf::CounterexampleReport report;
  if (construction == "tilde") {
    if (a.ratio) throw mf::InvalidInput("--ratio applies to the total case only");
    report = mf::case_tilde_rho(a.m1, a.m2, a.gamma);
  } else if (construction == "total") {
    report = mf::case_total_rho(a.m1, a.m2, a.gamma, a.ratio);
  } else {
    throw mf::InvalidInput("unknown construction '" + construction + "'");
  }
  print_report(report);

  if (a.which != "integral") {
    mf::csv::write_counterexample_header(std::cout);
    mf::csv::write_counterexample_row(std::cout, report);
    return report.violated() ? kExitOk : kExitNotReproduced;
  }

  const std::array<double, 2> w = parse_weight(a.weight).resolve(a.m1, a.m2);
  const mf::IntegralResult integral = mf::integral_counterexample(report, w, a.measure);
  std::cout << "weight = (" << mf::csv::format_double(w[0]) << ", " << mf::csv::format_double(w[1]) << ")\n"
            << "masses equal: " << (integral.masses_equal ? "yes" : "no") << '\n'
            << "integral = " << mf::csv::format_double(integral.value) << '\n';
  mf::csv::write_counterexample_header(std::cout);
  mf::csv::write_counterexample_row(std::cout, report, &integral, &w);
  return integral.masses_equal && integral.value < 0.0 && report.components_positive ? kExitOk
                                                                                      : kExitNotReproduced;
}

// ----------------------------------------------------------------- adiabat

int cmd_adiabat(const std::string& config_path, const std::string& out_file) {
  const mf::RunConfig cfg = mf::load_config(config_path);
  mf::require_adiabat(cfg);
  const auto volumes = mf::uniform_volume_grid(cfg.adiabat->v_min, cfg.adiabat->v_max, cfg.adiabat->samples);
  const mf::AdiabatResult result = mf::adiabat_process(cfg.solver.mixture, volumes);
  if (out_file.empty() || out_file == "-") {
    mf::csv::write_adiabat(std::cout, result);
  } else {
    std::ofstream os(out_file, std::ios::binary);
    if (!os) throw mf::RuntimeFailure("cannot write " + out_file);
    mf::csv::write_adiabat(os, result);
    std::cout << "gamma = " << mf::csv::format_double(result.gamma)
              << ", K = " << mf::csv::format_double(result.k_simple)
              << ", K1 = " << mf::csv::format_double(result.k1_composite)
              << ", max |heat residual| = " << mf::csv::format_double(result.max_abs_heat_residual()) << '\n';
  }
  return kExitOk;
}

// --------------------------------------------------------------- viscosity

int cmd_viscosity(const std::string& mu_hat, const std::string& xi_text, const std::string& lambda,
                  const std::string& rule, const std::string& alpha, const std::string& beta) {
  mf::ViscosityModel model;
  model.pure_viscosities = parse_list(mu_hat, "--mu-hat");
  if (rule != "simple" && rule != "exponential") throw mf::InvalidInput("--rule must be simple or exponential");
  model.rule = rule == "exponential" ? mf::OffDiagonalRule::exponential : mf::OffDiagonalRule::simple;
  if (!lambda.empty()) model.second = parse_matrix(lambda, "--lambda");
  if (!alpha.empty()) model.empiric_alpha = parse_matrix(alpha, "--alpha");
  if (!beta.empty()) model.empiric_beta = parse_matrix(beta, "--beta");
  model.validate();
  const mf::ConcentrationVector xi(parse_list(xi_text, "--xi"));
  if (xi.size() != model.size()) throw mf::InvalidInput("--xi and --mu-hat differ in length");

  const mf::ViscosityMatrices m = mf::evaluate_model(model, xi);
  print_matrix(std::cout, "M", m.shear);
  print_matrix(std::cout, "Lambda", m.second);
  print_matrix(std::cout, "H = Lambda + 2/3 M", m.bulk_combination());
  auto eigs = [](const char* name, const Eigen::VectorXd& v) {
    std::cout << name << ':';
    for (Eigen::Index i = 0; i < v.size(); ++i) std::cout << ' ' << mf::csv::format_double(v(i));
    std::cout << '\n';
  };
  eigs("eigenvalues sym(M)", mf::symmetric_eigenvalues(m.shear));
  eigs("eigenvalues sym(H)", mf::symmetric_eigenvalues(m.bulk_combination()));
  const mf::PositivityVerdict verdict = mf::bulk_constraint_check(m);
  std::cout << verdict.describe() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for barotropic viscous compressible multi-fluid flows"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and config grammar version");

  std::string config_path, out_path;
  auto* simulate = app.add_subcommand("simulate", "Run the 1-D periodic solver");
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--out", out_path, "Output directory (overrides output.directory)");

  CounterexampleArgs ce;
  std::optional<double> ratio;
  auto* counter = app.add_subcommand("counterexample", "Pressure monotonicity counterexamples");
  counter->add_option("--case", ce.which, "tilde | total | integral | search")
      ->check(CLI::IsMember({"tilde", "total", "integral", "search"}));
  counter->add_option("--M1", ce.m1, "Molar mass of constituent 1");
  counter->add_option("--M2", ce.m2, "Molar mass of constituent 2");
  counter->add_option("--gamma", ce.gamma, "Adiabatic index");
  counter->add_option("--ratio", ratio, "rho1/rho2 for the total case");
  counter->add_option("--construction", ce.construction, "State pair for --case integral: tilde | total")
      ->check(CLI::IsMember({"tilde", "total"}));
  counter->add_option("--weight", ce.weight, "w1,w2 or 'inverse' for (1/M1, 1/M2)");
  counter->add_option("--measure", ce.measure, "Domain measure |Omega|");
  counter->add_option("--samples", ce.samples, "Search draws");
  counter->add_option("--seed", ce.seed, "Search seed");
  counter->add_option("--M1-range", ce.m1_range, "Search range for M1")->expected(2)->delimiter(',');
  counter->add_option("--M2-range", ce.m2_range, "Search range for M2")->expected(2)->delimiter(',');
  counter->add_option("--gamma-range", ce.gamma_range, "Search range for gamma")->expected(2)->delimiter(',');

  std::string adiabat_config, adiabat_out;
  auto* adiabat = app.add_subcommand("adiabat", "Tabulate the reference adiabat");
  adiabat->add_option("--config", adiabat_config, "Config file with [adiabat] and a reference state")->required();
  adiabat->add_option("--out", adiabat_out, "CSV file ('-' for stdout)");

  std::string mu_hat, xi, lambda, rule = "simple", alpha, beta;
  auto* viscosity = app.add_subcommand("viscosity", "Evaluate viscosity matrices and positivity");
  viscosity->add_option("--mu-hat", mu_hat, "Pure viscosities, comma separated")->required();
  viscosity->add_option("--xi", xi, "Concentrations, comma separated")->required();
  viscosity->add_option("--lambda", lambda, "Second viscosity matrix, rows separated by ';'");
  viscosity->add_option("--rule", rule, "simple | exponential");
  viscosity->add_option("--alpha", alpha, "Empiric a_ij for the exponential rule");
  viscosity->add_option("--beta", beta, "Empiric b_ij for the exponential rule");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (show_version) {
      std::cout << "multifluid " << MULTIFLUID_VERSION << " (config grammar " << mf::kConfigGrammarVersion
                << ")\n";
      return kExitOk;
    }
    if (*simulate) return cmd_simulate(config_path, out_path);
    if (*counter) {
      ce.ratio = ratio;
      return cmd_counterexample(ce);
    }
    if (*adiabat) return cmd_adiabat(adiabat_config, adiabat_out);
    if (*viscosity) return cmd_viscosity(mu_hat, xi, lambda, rule, alpha, beta);
    std::cout << app.help();
    return kExitInvalid;
  } catch (const mf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const mf::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const mf::FloorBreach& e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  }
}
