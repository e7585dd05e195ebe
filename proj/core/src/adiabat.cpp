#include "multifluid/adiabat.hpp"

#include <algorithm>
#include <cmath>

#include "multifluid/error.hpp"

namespace multifluid {

namespace {

struct Constants {
  std::vector<double> masses;
  double alpha_sum = 0.0;
  double beta_sum = 0.0;
  double exponent = 0.0;  // beta / alpha
  double c1 = 0.0;
};

double temperature_at(const Constants& k, double volume) {
  return k.c1 * std::pow(volume, -k.exponent);
}

// Total pressure sum_i (m_i / (V M_i)) R theta(V).
double pressure_at(const Constants& k, const MixtureSpec& spec, double volume) {
  const double theta = temperature_at(k, volume);
  return k.beta_sum / volume * spec.gas_constant() * theta;
}

double internal_energy_at(const Constants& k, const MixtureSpec& spec, double volume) {
  // sum_i nu_i R m_i theta / (2 M_i) = R alpha theta
  return spec.gas_constant() * k.alpha_sum * temperature_at(k, volume);
}

}  // namespace

double AdiabatResult::max_abs_heat_residual() const {
  double worst = 0.0;
  for (double r : heat_residuals) worst = std::max(worst, std::abs(r));
  return worst;
}

double AdiabatResult::total_abs_heat_residual() const {
  double total = 0.0;
  for (double r : heat_residuals) total += std::abs(r);
  return total;
}

AdiabatResult adiabat_process(const MixtureSpec& spec, std::span<const double> volume_grid) {
  if (!spec.reference()) throw InvalidInput("adiabat needs a reference state");
  for (double v : volume_grid) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("volumes must be positive");
  }
  const ReferenceState& ref = *spec.reference();
  const auto molar = spec.molar_masses();
  const auto nu = spec.degrees_of_freedom();
  const std::size_t n = spec.size();
  const double r_gas = spec.gas_constant();

  Constants k;
  k.masses.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    k.masses[i] = ref.densities[i] * ref.volume;
    k.alpha_sum += k.masses[i] * nu[i] / (2.0 * molar[i]);
    k.beta_sum += k.masses[i] / molar[i];
  }
  k.exponent = k.beta_sum / k.alpha_sum;
  k.c1 = std::pow(ref.volume, k.exponent) * ref.temperature;

  const double rho0 = ref.total_density();
  const double total_mass = rho0 * ref.volume;
  double tilde_rho0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) tilde_rho0 += ref.densities[i] / molar[i];
  const double tilde_xi = tilde_rho0 / rho0;

  AdiabatResult out;
  out.alpha_sum = k.alpha_sum;
  out.beta_sum = k.beta_sum;
  out.gamma = k.exponent + 1.0;
  out.c1 = k.c1;
  out.c2 = std::pow(rho0, -k.exponent) * ref.temperature;
  out.c3 = r_gas * out.c2;
  out.k1_composite = out.c3;
  out.k_simple = r_gas * ref.temperature * std::pow(rho0, -out.gamma) * tilde_rho0;

  out.samples.reserve(volume_grid.size());
  for (double volume : volume_grid) {
    AdiabatSample s;
    s.volume = volume;
    s.density = total_mass / volume;
    s.temperature = temperature_at(k, volume);
    s.partial_pressures.resize(n);
    s.pressure = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double rho_i = k.masses[i] / volume;
      s.partial_pressures[i] = rho_i / molar[i] * r_gas * s.temperature;
      s.pressure += s.partial_pressures[i];
    }
    s.pressure_simple = out.k_simple * std::pow(s.density, out.gamma);
    s.pressure_composite = out.k1_composite * std::pow(s.density, out.gamma) * tilde_xi;
    out.samples.push_back(std::move(s));
  }

  if (volume_grid.size() > 1) {
    out.heat_residuals.reserve(volume_grid.size() - 1);
    for (std::size_t j = 0; j + 1 < volume_grid.size(); ++j) {
      const double v0 = volume_grid[j];
      const double v1 = volume_grid[j + 1];
      const double d_internal = internal_energy_at(k, spec, v1) - internal_energy_at(k, spec, v0);
      const double work = pressure_at(k, spec, 0.5 * (v0 + v1)) * (v1 - v0);
      out.heat_residuals.push_back(d_internal + work);
    }
  }
  return out;
}

std::vector<double> uniform_volume_grid(double v_min, double v_max, std::size_t count) {
  if (count < 2) throw InvalidInput("volume grid needs at least two points");
  if (!(v_min > 0.0) || !(v_max > v_min)) throw InvalidInput("volume range must satisfy 0 < min < max");
  std::vector<double> grid(count);
  const double h = (v_max - v_min) / static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) grid[j] = v_min + h * static_cast<double>(j);
  grid.back() = v_max;
  return grid;
}

}  // namespace multifluid
