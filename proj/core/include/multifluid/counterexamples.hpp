#pragma once

// Two-constituent states showing that the composite law p = rho^(gamma-1) tilde_rho
// (K1 = 1) is not monotone in the densities, pointwise and in integral form.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace multifluid {

enum class CounterexampleCase {
  tilde_rho,  ///< (p2 - p1)(tilde2 - tilde1) < 0
  total_rho,  ///< (p2 - p1)(rho2 - rho1) < 0
};

struct CounterexampleState {
  double rho;        ///< total density
  double tilde_rho;  ///< rho_1/M1 + rho_2/M2
  std::array<double, 2> components;  ///< reconstructed partial densities
  double pressure;
};

struct CounterexampleReport {
  CounterexampleCase which;
  double m1;
  double m2;
  double gamma;
  double epsilon;
  double ratio;  ///< (M1 - eps)/(M2 + eps)
  std::array<CounterexampleState, 2> states;
  double product_tilde;  ///< (p2 - p1)(tilde2 - tilde1)
  double product_total;  ///< (p2 - p1)(rho2 - rho1)
  bool components_positive;
  /// |product| of the selected case is below kDegenerateMargin; the violation
  /// then sits at round-off level (M1 close to M2).
  bool near_degenerate;

  static constexpr double kDegenerateMargin = 1e-9;

  /// Product for the inequality this case targets.
  double target_product() const;
  /// True when the targeted monotonicity inequality is violated (product < 0)
  /// and all four component densities are positive.
  bool violated() const;
  std::string verdict() const;
};

/// Pressure of the composite law with K1 = 1 evaluated from partial densities.
double counterexample_pressure(const std::array<double, 2>& components, double m1, double m2,
                               double gamma);

CounterexampleReport case_tilde_rho(double m1, double m2, double gamma);

struct RatioBounds {
  double lower;  ///< (M1/M2)^((gamma-1)/(2 gamma))
  double upper;  ///< (M1/M2)^(1/2)
};

RatioBounds total_rho_ratio_bounds(double m1, double m2, double gamma);

/// `ratio` must lie strictly inside total_rho_ratio_bounds; when absent the
/// geometric mean of the bounds is used.
CounterexampleReport case_total_rho(double m1, double m2, double gamma,
                                    std::optional<double> ratio = std::nullopt);

/// Two cells of measure |Omega|/2 each. Distribution 1 holds state A then B,
/// distribution 2 holds B then A.
struct SwapDistribution {
  std::array<std::array<double, 2>, 2> first;   ///< [cell][constituent]
  std::array<std::array<double, 2>, 2> second;  ///< [cell][constituent]
  double cell_measure;

  std::array<double, 2> mass_first() const;
  std::array<double, 2> mass_second() const;
};

SwapDistribution swap_distribution(const CounterexampleReport& report, double measure);

struct IntegralResult {
  double value;  ///< integral of (p(rho^1) - p(rho^2)) (w.rho^1 - w.rho^2)
  double reduced_value;  ///< |Omega| (p_A - p_B)(w.rho_A - w.rho_B)
  bool masses_equal;     ///< componentwise, compared exactly
  SwapDistribution distribution;
};

IntegralResult integral_counterexample(const CounterexampleReport& report,
                                       const std::array<double, 2>& weight, double measure);

struct ParameterRange {
  double lo;
  double hi;
};

/// Weight as a function of the drawn molar masses, so that e.g. (1/M1, 1/M2)
/// can be searched.
struct WeightSpec {
  enum class Kind { fixed, inverse_molar } kind = Kind::fixed;
  std::array<double, 2> fixed{1.0, 0.0};

  std::array<double, 2> resolve(double m1, double m2) const;
  static WeightSpec constant(double w1, double w2) { return {Kind::fixed, {w1, w2}}; }
  static WeightSpec inverse_molar() { return {Kind::inverse_molar, {0.0, 0.0}}; }
};

struct SearchResult {
  bool found = false;
  std::size_t draws = 0;  ///< number of parameter tuples drawn
  double m1 = 0.0;
  double m2 = 0.0;
  double gamma = 0.0;
  CounterexampleCase which = CounterexampleCase::tilde_rho;
  std::array<double, 2> weight{0.0, 0.0};
  double integral = 0.0;
};

/// Uniform random search for a parameter tuple whose integral counterexample
/// is strictly negative for the given weight. Each draw evaluates the
/// tilde-rho construction and then the total-rho construction at its default
/// ratio. Draws with M1 <= M2 are skipped but counted. Deterministic in `seed`.
SearchResult weight_search(const WeightSpec& weight, ParameterRange m1_range,
                           ParameterRange m2_range, ParameterRange gamma_range,
                           std::size_t samples, std::uint64_t seed);

/// Rebuilds the report for a search hit and evaluates its integral with unit
/// measure.
double reevaluate(const SearchResult& hit);

std::string to_string(CounterexampleCase which);

}  // namespace multifluid
