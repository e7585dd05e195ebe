#pragma once

// Constitutive relations of a barotropic mixture of ideal gases: concentrations,
// the mixture adiabatic index, the two equivalent pressure laws, the alpha
// coefficients weighting the common pressure, and the average velocity.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace multifluid {

/// Reference (initial) state of a material volume: per-constituent densities,
/// common temperature and volume.
struct ReferenceState {
  std::vector<double> densities;
  double temperature = 0.0;
  double volume = 0.0;

  double total_density() const;
};

/// Physical constants of an N-constituent mixture. Immutable once built; the
/// factories validate every invariant and throw InvalidInput otherwise.
class MixtureSpec {
 public:
  static MixtureSpec from_gammas(std::vector<double> molar_masses, std::vector<double> gammas,
                                 std::vector<double> pure_viscosities = {},
                                 double gas_constant = 8.314462618,
                                 std::optional<ReferenceState> reference = std::nullopt);

  static MixtureSpec from_degrees_of_freedom(std::vector<double> molar_masses,
                                             std::vector<double> degrees_of_freedom,
                                             std::vector<double> pure_viscosities = {},
                                             double gas_constant = 8.314462618,
                                             std::optional<ReferenceState> reference = std::nullopt);

  std::size_t size() const noexcept { return molar_masses_.size(); }
  std::span<const double> molar_masses() const noexcept { return molar_masses_; }
  std::span<const double> gammas() const noexcept { return gammas_; }
  std::span<const double> degrees_of_freedom() const noexcept { return degrees_of_freedom_; }
  /// Zero-filled when the mixture was built without viscosities.
  std::span<const double> pure_viscosities() const noexcept { return pure_viscosities_; }
  double gas_constant() const noexcept { return gas_constant_; }
  const std::optional<ReferenceState>& reference() const noexcept { return reference_; }

  double gamma_min() const;
  double gamma_max() const;

 private:
  MixtureSpec() = default;
  void validate() const;

  std::vector<double> molar_masses_;
  std::vector<double> gammas_;
  std::vector<double> degrees_of_freedom_;
  std::vector<double> pure_viscosities_;
  double gas_constant_ = 0.0;
  std::optional<ReferenceState> reference_;
};

/// nu = 2 / (gamma - 1)
double degrees_of_freedom_from_gamma(double gamma);
/// gamma = 1 + 2 / nu
double gamma_from_degrees_of_freedom(double nu);

/// Partial densities rho_i >= 0 of the constituents.
class DensityVector {
 public:
  explicit DensityVector(std::vector<double> rho);

  std::size_t size() const noexcept { return rho_.size(); }
  double operator[](std::size_t i) const { return rho_[i]; }
  std::span<const double> values() const noexcept { return rho_; }
  double total() const;

 private:
  std::vector<double> rho_;
};

/// Mass fractions xi_i in [0, 1] summing to one within 1e-12.
class ConcentrationVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ConcentrationVector(std::vector<double> xi);

  std::size_t size() const noexcept { return xi_.size(); }
  double operator[](std::size_t i) const { return xi_[i]; }
  std::span<const double> values() const noexcept { return xi_; }

 private:
  std::vector<double> xi_;
};

ConcentrationVector concentrations(const DensityVector& rho);

struct TildeQuantities {
  double tilde_rho;  ///< sum rho_i / M_i
  double tilde_xi;   ///< sum xi_i / M_i = tilde_rho / rho
};

TildeQuantities tilde_quantities(const DensityVector& rho, const MixtureSpec& spec);

/// Mixture adiabatic index gamma(xi) = 1 + (sum xi_i/M_i) / (sum xi_j/(M_j (gamma_j - 1))).
/// A zero concentration contributes nothing to either sum.
double adiabatic_index(const ConcentrationVector& xi, const MixtureSpec& spec);

enum class GammaMode { frozen, pointwise };

/// How the exponent of the composite law is chosen. In frozen mode
/// `frozen_value` is used as is; in pointwise mode gamma(xi) is evaluated from
/// the density vector being passed.
struct GammaSetting {
  GammaMode mode = GammaMode::frozen;
  double frozen_value = 0.0;
};

/// Composite law p = K1 rho^(gamma-1) tilde_rho.
double pressure_composite(const DensityVector& rho, double k1, const MixtureSpec& spec,
                          const GammaSetting& gamma);

/// The same law written as K1 rho^gamma tilde_xi. Kept separate so the two
/// algebraic forms can be compared.
double pressure_composite_concentration_form(const DensityVector& rho, double k1,
                                             const MixtureSpec& spec, const GammaSetting& gamma);

/// Simple law p = K rho^gamma.
double pressure_simple(double rho_total, double k, double gamma);

enum class AlphaMode { concentration, constant };

struct AlphaSetting {
  AlphaMode mode = AlphaMode::concentration;
  std::vector<double> constants;
};

/// Throws InvalidInput when constant mode is selected with non-positive
/// entries or a sum differing from one by more than 1e-12.
void validate_alpha(const AlphaSetting& setting, std::size_t n_constituents);

std::vector<double> alpha_coeffs(const ConcentrationVector& xi, const AlphaSetting& setting);

/// v = sum alpha_i u_i
double average_velocity(std::span<const double> alpha, std::span<const double> u);

/// Two-constituent densities with prescribed total rho and tilde_rho:
///   rho_1 = M1 (rho - M2 tilde_rho) / (M1 - M2),
///   rho_2 = M2 (M1 tilde_rho - rho) / (M1 - M2).
/// The result may carry negative entries when (rho, tilde_rho) is outside the
/// admissible cone; callers check positivity.
std::vector<double> reconstruct_densities(double rho_total, double tilde_rho, double m1, double m2);

}  // namespace multifluid
