#pragma once

// Run configuration files.
//
// Grammar (version 1), one statement per line:
//
//   # comment            anything after '#' is ignored
//   [section]            opens a section
//   key = value          key inside the current section
//   section.key = value  fully qualified key, allowed before any section
//   seed = 42            the only unqualified top-level key
//
// Values are scalars, comma-separated vectors ("1, 2") or matrices whose rows
// are separated by ';' ("1, 0; 0, 1"). Unknown sections or keys and repeated
// keys are errors.
//
// Sections and keys:
//   mixture:   molar_masses, gammas | degrees_of_freedom, pure_viscosities,
//              gas_constant, reference_densities, reference_temperature,
//              reference_volume
//   pressure:  law (simple|composite), K, K1, gamma_mode (frozen|pointwise), gamma
//   alpha:     mode (concentration|constant), constants
//   viscosity: rule (none|constant|simple|exponential; eq14 = simple), shear, lambda,
//              empiric_alpha, empiric_beta
//   grid:      cells, length
//   time:      t_end, cfl, snapshot_interval, dt, max_steps
//   initial:   profile (uniform|sine|gaussian|random), rho, rho_amplitude, u,
//              u_amplitude, wavenumber, center, width
//   forces:    waveform (zero|constant|sinusoid), amplitude, wavenumber
//   output:    directory
//   adiabat:   v_min, v_max, samples

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "multifluid/mixture.hpp"
#include "multifluid/run.hpp"
#include "multifluid/solver1d.hpp"

namespace multifluid {

inline constexpr int kConfigGrammarVersion = 1;

struct AdiabatSetup {
  double v_min = 0.0;
  double v_max = 0.0;
  std::size_t samples = 0;
};

struct RunConfig {
  SolverConfig solver;
  std::optional<Grid1D> grid;
  RunOptions time;
  std::optional<InitialProfile> initial;
  std::string output_directory;
  std::uint64_t seed = 0;
  std::optional<AdiabatSetup> adiabat;
  std::set<std::string> sections;  ///< sections that appeared in the file
};

/// Parses and validates. Throws ConfigError with the line number for syntax
/// errors and with the key path for validation failures. When grid and
/// initial sections are present the initial state is built and checked, so
/// every constraint of the solver is enforced at load time.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError naming the first missing section needed by `simulate`.
void require_simulation(const RunConfig& config);

/// Throws ConfigError unless the adiabat section and a reference state exist.
void require_adiabat(const RunConfig& config);

}  // namespace multifluid
