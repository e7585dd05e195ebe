#pragma once

#include <span>
#include <vector>

#include "multifluid/mixture.hpp"

namespace multifluid {

/// One tabulated point of the material-volume adiabat.
struct AdiabatSample {
  double volume;
  double density;      ///< total density m / V
  double temperature;  ///< theta = C1 V^(-beta/alpha)
  std::vector<double> partial_pressures;  ///< (rho_i / M_i) R theta
  double pressure;            ///< sum of partial pressures
  double pressure_simple;     ///< K rho^gamma
  double pressure_composite;  ///< K1 rho^gamma tilde_xi
};

struct AdiabatResult {
  double alpha_sum;  ///< sum m_i nu_i / (2 M_i)
  double beta_sum;   ///< sum m_i / M_i
  double gamma;      ///< beta/alpha + 1 at the reference composition
  double c1;         ///< V0^(beta/alpha) theta0
  double c2;         ///< rho0^(-beta/alpha) theta0
  double c3;         ///< R rho0^(-beta/alpha) theta0, equal to K1
  double k_simple;
  double k1_composite;
  std::vector<AdiabatSample> samples;
  /// sum_i dU_i + sum_i p_i dV between consecutive samples, pressure taken at
  /// the midpoint volume. One entry per interval.
  std::vector<double> heat_residuals;

  double max_abs_heat_residual() const;
  double total_abs_heat_residual() const;
};

/// Tabulates the isentropic compression/expansion of the mixture described by
/// `spec.reference()` over the given volumes. Throws InvalidInput when the
/// mixture has no reference state or any volume is not positive.
AdiabatResult adiabat_process(const MixtureSpec& spec, std::span<const double> volume_grid);

/// `count` equally spaced volumes covering [v_min, v_max].
std::vector<double> uniform_volume_grid(double v_min, double v_max, std::size_t count);

}  // namespace multifluid
