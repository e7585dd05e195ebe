#include "multifluid/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "multifluid/error.hpp"

namespace multifluid {

namespace {

std::string index_message(const char* what, std::size_t i, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " [" << i + 1 << "] = " << value;
  return os.str();
}

double sum(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace

double ReferenceState::total_density() const { return sum(densities); }

double degrees_of_freedom_from_gamma(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw InvalidInput("adiabatic index must exceed 1");
  }
  return 2.0 / (gamma - 1.0);
}

double gamma_from_degrees_of_freedom(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw InvalidInput("degrees of freedom must be positive");
  }
  return 1.0 + 2.0 / nu;
}

MixtureSpec MixtureSpec::from_gammas(std::vector<double> molar_masses, std::vector<double> gammas,
                                     std::vector<double> pure_viscosities, double gas_constant,
                                     std::optional<ReferenceState> reference) {
  MixtureSpec spec;
  spec.molar_masses_ = std::move(molar_masses);
  spec.gammas_ = std::move(gammas);
  spec.pure_viscosities_ = std::move(pure_viscosities);
  spec.gas_constant_ = gas_constant;
  spec.reference_ = std::move(reference);
  if (spec.pure_viscosities_.empty()) spec.pure_viscosities_.assign(spec.molar_masses_.size(), 0.0);
  spec.validate();
  spec.degrees_of_freedom_.reserve(spec.gammas_.size());
  for (double g : spec.gammas_) spec.degrees_of_freedom_.push_back(degrees_of_freedom_from_gamma(g));
  return spec;
}

MixtureSpec MixtureSpec::from_degrees_of_freedom(std::vector<double> molar_masses,
                                                 std::vector<double> degrees_of_freedom,
                                                 std::vector<double> pure_viscosities,
                                                 double gas_constant,
                                                 std::optional<ReferenceState> reference) {
  std::vector<double> gammas;
  gammas.reserve(degrees_of_freedom.size());
  for (std::size_t i = 0; i < degrees_of_freedom.size(); ++i) {
    if (!(degrees_of_freedom[i] > 0.0) || !std::isfinite(degrees_of_freedom[i])) {
      throw InvalidInput(index_message("degrees of freedom must be positive:", i,
                                       degrees_of_freedom[i]));
    }
    gammas.push_back(gamma_from_degrees_of_freedom(degrees_of_freedom[i]));
  }
  MixtureSpec spec = from_gammas(std::move(molar_masses), std::move(gammas),
                                 std::move(pure_viscosities), gas_constant, std::move(reference));
  // Keep the user's nu exactly rather than the round-tripped value.
  spec.degrees_of_freedom_ = std::move(degrees_of_freedom);
  return spec;
}

void MixtureSpec::validate() const {
  const std::size_t n = molar_masses_.size();
  if (n == 0) throw InvalidInput("mixture needs at least one constituent");
  if (gammas_.size() != n) {
    throw InvalidInput("adiabatic indices: expected " + std::to_string(n) + " values, got " +
                       std::to_string(gammas_.size()));
  }
  if (pure_viscosities_.size() != n) {
    throw InvalidInput("pure viscosities: expected " + std::to_string(n) + " values, got " +
                       std::to_string(pure_viscosities_.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(molar_masses_[i] > 0.0) || !std::isfinite(molar_masses_[i])) {
      throw InvalidInput(index_message("molar mass must be positive:", i, molar_masses_[i]));
    }
    if (!(gammas_[i] > 1.0) || !std::isfinite(gammas_[i])) {
      throw InvalidInput(index_message("adiabatic index must exceed 1:", i, gammas_[i]));
    }
    if (!(pure_viscosities_[i] >= 0.0) || !std::isfinite(pure_viscosities_[i])) {
      throw InvalidInput(index_message("pure viscosity must be non-negative:", i,
                                       pure_viscosities_[i]));
    }
  }
  if (!(gas_constant_ > 0.0) || !std::isfinite(gas_constant_)) {
    throw InvalidInput("gas constant must be positive");
  }
  if (reference_) {
    if (reference_->densities.size() != n) {
      throw InvalidInput("reference densities: expected " + std::to_string(n) + " values");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(reference_->densities[i] > 0.0) || !std::isfinite(reference_->densities[i])) {
        throw InvalidInput(index_message("reference density must be positive:", i,
                                         reference_->densities[i]));
      }
    }
    if (!(reference_->temperature > 0.0)) throw InvalidInput("reference temperature must be positive");
    if (!(reference_->volume > 0.0)) throw InvalidInput("reference volume must be positive");
  }
}

double MixtureSpec::gamma_min() const { return *std::min_element(gammas_.begin(), gammas_.end()); }
double MixtureSpec::gamma_max() const { return *std::max_element(gammas_.begin(), gammas_.end()); }

DensityVector::DensityVector(std::vector<double> rho) : rho_(std::move(rho)) {
  if (rho_.empty()) throw InvalidInput("density vector is empty");
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    if (!(rho_[i] >= 0.0) || !std::isfinite(rho_[i])) {
      throw InvalidInput(index_message("partial density must be non-negative:", i, rho_[i]));
    }
  }
}

double DensityVector::total() const { return sum(rho_); }

ConcentrationVector::ConcentrationVector(std::vector<double> xi) : xi_(std::move(xi)) {
  if (xi_.empty()) throw InvalidInput("concentration vector is empty");
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    if (!(xi_[i] >= 0.0 && xi_[i] <= 1.0)) {
      throw InvalidInput(index_message("concentration outside [0, 1]:", i, xi_[i]));
    }
  }
  if (std::abs(sum(xi_) - 1.0) > kSumTolerance) {
    throw InvalidInput("concentrations must sum to 1");
  }
}

ConcentrationVector concentrations(const DensityVector& rho) {
  const double total = rho.total();
  if (!(total > 0.0)) throw InvalidInput("total density must be positive");
  std::vector<double> xi(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) xi[i] = rho[i] / total;
  return ConcentrationVector(std::move(xi));
}

TildeQuantities tilde_quantities(const DensityVector& rho, const MixtureSpec& spec) {
  if (rho.size() != spec.size()) throw InvalidInput("density vector size does not match mixture");
  const double total = rho.total();
  if (!(total > 0.0)) throw InvalidInput("total density must be positive");
  const auto molar = spec.molar_masses();
  double tilde_rho = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) tilde_rho += rho[i] / molar[i];
  return {tilde_rho, tilde_rho / total};
}

double adiabatic_index(const ConcentrationVector& xi, const MixtureSpec& spec) {
  if (xi.size() != spec.size()) throw InvalidInput("concentration size does not match mixture");
  const auto molar = spec.molar_masses();
  const auto gammas = spec.gammas();
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    numerator += xi[i] / molar[i];
    denominator += xi[i] / (molar[i] * (gammas[i] - 1.0));
  }
  // gamma is a weighted harmonic mean of the gamma_i; rounding may push the
  // quotient an ulp outside their range.
  const double lo = spec.gamma_min();
  const double hi = spec.gamma_max();
  if (lo == hi) return lo;
  return std::clamp(1.0 + numerator / denominator, lo, hi);
}

namespace {

double resolve_gamma(const DensityVector& rho, const MixtureSpec& spec, const GammaSetting& gamma) {
  if (gamma.mode == GammaMode::pointwise) return adiabatic_index(concentrations(rho), spec);
  if (!(gamma.frozen_value > 1.0)) throw InvalidInput("frozen adiabatic index must exceed 1");
  return gamma.frozen_value;
}

void check_k(double k, const char* name) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput(std::string(name) + " must be positive");
}

}  // namespace

double pressure_composite(const DensityVector& rho, double k1, const MixtureSpec& spec,
                          const GammaSetting& gamma) {
  check_k(k1, "K1");
  const auto tilde = tilde_quantities(rho, spec);
  const double g = resolve_gamma(rho, spec, gamma);
  return k1 * std::pow(rho.total(), g - 1.0) * tilde.tilde_rho;
}

double pressure_composite_concentration_form(const DensityVector& rho, double k1,
                                             const MixtureSpec& spec, const GammaSetting& gamma) {
  check_k(k1, "K1");
  const auto tilde = tilde_quantities(rho, spec);
  const double g = resolve_gamma(rho, spec, gamma);
  return k1 * std::pow(rho.total(), g) * tilde.tilde_xi;
}

double pressure_simple(double rho_total, double k, double gamma) {
  if (!(rho_total > 0.0) || !std::isfinite(rho_total)) {
    throw InvalidInput("total density must be positive");
  }
  check_k(k, "K");
  if (!(gamma > 1.0)) throw InvalidInput("adiabatic index must exceed 1");
  return k * std::pow(rho_total, gamma);
}

void validate_alpha(const AlphaSetting& setting, std::size_t n_constituents) {
  if (setting.mode == AlphaMode::concentration) return;
  if (setting.constants.size() != n_constituents) {
    throw InvalidInput("alpha constants: expected " + std::to_string(n_constituents) +
                       " values, got " + std::to_string(setting.constants.size()));
  }
  for (std::size_t i = 0; i < setting.constants.size(); ++i) {
    if (!(setting.constants[i] > 0.0)) {
      throw InvalidInput(index_message("alpha constant must be positive:", i, setting.constants[i]));
    }
  }
  const double total = sum(setting.constants);
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha constants must sum to 1 (sum = " << total << ")";
    throw InvalidInput(os.str());
  }
}

std::vector<double> alpha_coeffs(const ConcentrationVector& xi, const AlphaSetting& setting) {
  if (setting.mode == AlphaMode::concentration) {
    return {xi.values().begin(), xi.values().end()};
  }
  validate_alpha(setting, xi.size());
  return setting.constants;
}

double average_velocity(std::span<const double> alpha, std::span<const double> u) {
  if (alpha.size() != u.size()) throw InvalidInput("alpha and velocity sizes differ");
  double v = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) v += alpha[i] * u[i];
  return v;
}

std::vector<double> reconstruct_densities(double rho_total, double tilde_rho, double m1,
                                          double m2) {
  if (m1 == m2) throw InvalidInput("reconstruction is degenerate for equal molar masses");
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw InvalidInput("molar masses must be positive");
  const double scale = 1.0 / (m1 - m2);
  return {scale * m1 * (rho_total - m2 * tilde_rho), scale * m2 * (m1 * tilde_rho - rho_total)};
}

}  // namespace multifluid
