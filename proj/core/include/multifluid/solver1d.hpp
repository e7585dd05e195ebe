#pragma once

// Finite-volume solver for the one-dimensional periodic multi-fluid system
//
//   d_t rho_i + d_x(rho_i v) = 0,
//   d_t(rho_i u_i) + d_x(rho_i v u_i) + alpha_i d_x p = d_x(sum_j (2 mu_ij + lambda_ij) d_x u_j) + rho_i f_i,
//
// with v = sum alpha_i u_i and a barotropic common pressure p.
//
// Cell-centred unknowns rho_i and rho_i u_i. Continuity fluxes use the face
// average of v and the upwind partial density, so every constituent shares the
// same upwind weights and the concentrations obey a discrete maximum principle.
// Momentum is upwinded by the sign of the face v, the pressure gradient is
// centred, and the viscous term is a compact second difference with face
// averaged coefficients. Time stepping is two-stage SSP Runge-Kutta.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "multifluid/mixture.hpp"
#include "multifluid/viscosity.hpp"

namespace multifluid {

class Grid1D {
 public:
  static constexpr std::size_t kMinCells = 4;

  Grid1D(std::size_t n_cells, double length);

  std::size_t n_cells() const noexcept { return n_cells_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return length_ / static_cast<double>(n_cells_); }
  double center(std::size_t cell) const noexcept {
    return (static_cast<double>(cell) + 0.5) * dx();
  }
  std::size_t left(std::size_t cell) const noexcept {
    return cell == 0 ? n_cells_ - 1 : cell - 1;
  }
  std::size_t right(std::size_t cell) const noexcept {
    return cell + 1 == n_cells_ ? 0 : cell + 1;
  }

  bool operator==(const Grid1D&) const = default;

 private:
  std::size_t n_cells_;
  double length_;
};

/// N x n_cells values stored constituent-major.
class ConstituentField {
 public:
  ConstituentField() = default;
  ConstituentField(std::size_t n_constituents, std::size_t n_cells, double fill = 0.0)
      : n_constituents_(n_constituents), n_cells_(n_cells), data_(n_constituents * n_cells, fill) {}

  std::size_t n_constituents() const noexcept { return n_constituents_; }
  std::size_t n_cells() const noexcept { return n_cells_; }

  double& operator()(std::size_t i, std::size_t cell) { return data_[i * n_cells_ + cell]; }
  double operator()(std::size_t i, std::size_t cell) const { return data_[i * n_cells_ + cell]; }

  std::span<double> constituent(std::size_t i) { return {data_.data() + i * n_cells_, n_cells_}; }
  std::span<const double> constituent(std::size_t i) const {
    return {data_.data() + i * n_cells_, n_cells_};
  }
  std::span<const double> raw() const noexcept { return data_; }
  std::span<double> raw() noexcept { return data_; }

  bool operator==(const ConstituentField&) const = default;

 private:
  std::size_t n_constituents_ = 0;
  std::size_t n_cells_ = 0;
  std::vector<double> data_;
};

struct FieldState {
  double time = 0.0;
  Grid1D grid{Grid1D::kMinCells, 1.0};
  ConstituentField rho;       ///< partial densities
  ConstituentField momentum;  ///< rho_i u_i

  std::size_t n_constituents() const noexcept { return rho.n_constituents(); }
  std::size_t n_cells() const noexcept { return rho.n_cells(); }
  bool operator==(const FieldState&) const = default;
};

enum class PressureLaw {
  simple,     ///< p = K rho^gamma
  composite,  ///< p = K1 rho^(gamma-1) tilde_rho
};

struct PressureClosure {
  PressureLaw law = PressureLaw::simple;
  /// K or K1. Zero gives a pressureless medium.
  double coefficient = 1.0;
  GammaMode gamma_mode = GammaMode::frozen;
  /// Frozen exponent. When unset in frozen mode, init_state fills it with
  /// gamma(xi) at the mean initial concentration.
  std::optional<double> gamma;
};

enum class ViscosityKind {
  none,           ///< inviscid
  constant,       ///< fixed M and Lambda
  concentration,  ///< M(xi) from a ViscosityModel, evaluated per cell
};

struct ViscositySetup {
  ViscosityKind kind = ViscosityKind::none;
  std::optional<ViscosityMatrices> constant;
  std::optional<ViscosityModel> model;

  /// Concentrations below this in the initial state make concentration
  /// dependent viscosity unusable (M(xi) turns singular).
  static constexpr double kMinConcentration = 1e-8;
};

enum class ForceWaveform { zero, constant, sinusoid };

struct ForceSpec {
  ForceWaveform waveform = ForceWaveform::zero;
  std::vector<double> amplitude;  ///< per constituent
  int wavenumber = 1;

  /// f_i(x, t). The implemented waveforms do not depend on t.
  double value(std::size_t constituent, double x, double length) const;
};

struct SolverConfig {
  MixtureSpec mixture;
  PressureClosure pressure;
  AlphaSetting alpha;
  ViscositySetup viscosity;
  ForceSpec forces;
};

enum class ProfileKind { uniform, sine, gaussian, random };

/// Initial data. For each constituent i
///   uniform:  rho_i(x) = rho[i],                       u_i(x) = u[i]
///   sine:     rho[i] + rho_amplitude[i] s(x),          u[i] + u_amplitude[i] s(x),
///             s(x) = sin(2 pi k x / L)
///   gaussian: rho[i] + rho_amplitude[i] g(x),          u[i] + u_amplitude[i] g(x),
///             g(x) = exp(-d(x, center)^2 / (2 width^2)), d the periodic distance
///   random:   rho[i] (1 + rho_amplitude[i] r),         u[i] + u_amplitude[i] r,
///             r uniform in [-1, 1) per cell from `seed`
/// Smooth profiles are cell averaged with 5-point Gauss-Legendre quadrature.
struct InitialProfile {
  ProfileKind kind = ProfileKind::uniform;
  std::vector<double> rho;
  std::vector<double> rho_amplitude;
  std::vector<double> u;
  std::vector<double> u_amplitude;
  int wavenumber = 1;
  double center = 0.5;  ///< absolute position
  double width = 0.1;
  std::uint64_t seed = 0;
};

/// Derived per-cell quantities of a state.
struct Primitives {
  ConstituentField velocity;
  ConstituentField concentration;
  ConstituentField alpha;
  std::vector<double> total_density;
  std::vector<double> average_velocity;
  std::vector<double> pressure;
  std::vector<double> gamma;
};

struct Tendency {
  ConstituentField rho;
  ConstituentField momentum;
};

class Solver1D {
 public:
  /// Densities below this abort velocity recovery.
  static constexpr double kDensityFloor = 1e-10;

  Solver1D(SolverConfig config, Grid1D grid);

  const SolverConfig& config() const noexcept { return config_; }
  const Grid1D& grid() const noexcept { return grid_; }
  std::size_t n_constituents() const noexcept { return config_.mixture.size(); }

  /// Cell-averaged initial state. Resolves the frozen adiabatic index when it
  /// was left unset and checks viscosity positivity at the initial
  /// concentrations. Throws InvalidInput on any violation.
  FieldState init_state(const InitialProfile& profile);

  /// Cell averages of the profile without any positivity or viscosity checks.
  FieldState build_initial_fields(const InitialProfile& profile) const;

  /// Validates a state built by hand (sizes, positivity) and resolves the
  /// frozen adiabatic index from it when unset.
  void adopt_state(const FieldState& state);

  /// Frozen exponent in use, or nullopt in pointwise mode / before resolution.
  std::optional<double> frozen_gamma() const { return config_.pressure.gamma; }

  Primitives primitives(const FieldState& state) const;

  /// Per-cell stress coefficient matrices 2M + Lambda (size 1 when constant,
  /// empty when inviscid).
  std::vector<Matrix> stress_coefficients(const Primitives& prim) const;

  Tendency rhs(const FieldState& state) const;

  /// cfl * min over cells of min(dx / (|v| + c), dx^2 min_i rho_i / (2 sigma_max)),
  /// c = sqrt(gamma p / rho), sigma_max the largest eigenvalue of sym(2M + Lambda).
  /// Returns +inf when neither bound is active.
  double stable_dt(const FieldState& state, double cfl) const;

  FieldState step(const FieldState& state, double dt) const;

 private:
  void validate_config() const;
  void check_viscosity_at(const FieldState& state) const;
  double cell_pressure(std::span<const double> rho_cell, double gamma) const;

  SolverConfig config_;
  Grid1D grid_;
};

}  // namespace multifluid
