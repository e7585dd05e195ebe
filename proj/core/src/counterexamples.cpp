#include "multifluid/counterexamples.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "multifluid/error.hpp"
#include "multifluid/mixture.hpp"

namespace multifluid {

namespace {

void check_parameters(double m1, double m2, double gamma) {
  if (!(m2 > 0.0) || !(m1 > m2) || !std::isfinite(m1)) {
    std::ostringstream os;
    os.precision(17);
    os << "counterexamples need M1 > M2 > 0 (got M1 = " << m1 << ", M2 = " << m2 << ")";
    throw InvalidInput(os.str());
  }
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw InvalidInput("gamma must exceed 1");
}

CounterexampleState make_state(double rho, double tilde_rho, double m1, double m2, double gamma) {
  const auto parts = reconstruct_densities(rho, tilde_rho, m1, m2);
  CounterexampleState s;
  s.rho = rho;
  s.tilde_rho = tilde_rho;
  s.components = {parts[0], parts[1]};
  s.pressure = counterexample_pressure(s.components, m1, m2, gamma);
  return s;
}

// Both constructions share the two (rho, tilde_rho) pairs and differ only in
// the choice of epsilon.
CounterexampleReport build(CounterexampleCase which, double m1, double m2, double gamma,
                           double epsilon) {
  const double tilde1 = 1.0;
  const double tilde2 = std::pow(m1 / m2, (gamma - 1.0) / (2.0 * gamma));
  const double rho1 = m1 - epsilon;
  const double rho2 = (m2 + epsilon) * tilde2;

  CounterexampleReport r;
  r.which = which;
  r.m1 = m1;
  r.m2 = m2;
  r.gamma = gamma;
  r.epsilon = epsilon;
  r.ratio = (m1 - epsilon) / (m2 + epsilon);
  r.states = {make_state(rho1, tilde1, m1, m2, gamma), make_state(rho2, tilde2, m1, m2, gamma)};
  const double dp = r.states[1].pressure - r.states[0].pressure;
  r.product_tilde = dp * (r.states[1].tilde_rho - r.states[0].tilde_rho);
  r.product_total = dp * (r.states[1].rho - r.states[0].rho);
  r.components_positive = true;
  for (const auto& s : r.states) {
    for (double c : s.components) r.components_positive = r.components_positive && c > 0.0;
  }
  r.near_degenerate = std::abs(r.target_product()) < CounterexampleReport::kDegenerateMargin;
  return r;
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw(std::mt19937_64& rng, ParameterRange range) {
  return range.lo + (range.hi - range.lo) * unit_uniform(rng);
}

}  // namespace

double CounterexampleReport::target_product() const {
  return which == CounterexampleCase::tilde_rho ? product_tilde : product_total;
}

bool CounterexampleReport::violated() const {
  return components_positive && target_product() < 0.0;
}

std::string CounterexampleReport::verdict() const {
  const char* inequality = which == CounterexampleCase::tilde_rho
                               ? "(p2 - p1)(tilde_rho2 - tilde_rho1) >= 0"
                               : "(p2 - p1)(rho2 - rho1) >= 0";
  std::string out = violated() ? std::string("monotonicity violated: ") + inequality + " fails"
                               : std::string("not reproduced: ") + inequality + " holds";
  if (!components_positive) out += " (reconstructed densities not all positive)";
  if (near_degenerate) out += " [near-degenerate margin]";
  return out;
}

double counterexample_pressure(const std::array<double, 2>& components, double m1, double m2,
                               double gamma) {
  const double rho = components[0] + components[1];
  const double tilde_rho = components[0] / m1 + components[1] / m2;
  return std::pow(rho, gamma - 1.0) * tilde_rho;
}

CounterexampleReport case_tilde_rho(double m1, double m2, double gamma) {
  check_parameters(m1, m2, gamma);
  const double epsilon = std::sqrt(m1 * m2) / 3.0 * (m1 - m2) / (m1 + m2);
  return build(CounterexampleCase::tilde_rho, m1, m2, gamma, epsilon);
}

RatioBounds total_rho_ratio_bounds(double m1, double m2, double gamma) {
  check_parameters(m1, m2, gamma);
  const double q = m1 / m2;
  return {std::pow(q, (gamma - 1.0) / (2.0 * gamma)), std::sqrt(q)};
}

CounterexampleReport case_total_rho(double m1, double m2, double gamma,
                                    std::optional<double> ratio) {
  const RatioBounds bounds = total_rho_ratio_bounds(m1, m2, gamma);
  const double r = ratio.value_or(std::sqrt(bounds.lower * bounds.upper));
  if (!(r > bounds.lower && r < bounds.upper)) {
    std::ostringstream os;
    os.precision(17);
    os << "ratio " << r << " must lie strictly inside (" << bounds.lower << ", " << bounds.upper
       << ")";
    throw InvalidInput(os.str());
  }
  // (M1 - eps) / (M2 + eps) = r
  const double epsilon = (m1 - r * m2) / (1.0 + r);
  return build(CounterexampleCase::total_rho, m1, m2, gamma, epsilon);
}

std::array<double, 2> SwapDistribution::mass_first() const {
  return {cell_measure * first[0][0] + cell_measure * first[1][0],
          cell_measure * first[0][1] + cell_measure * first[1][1]};
}

std::array<double, 2> SwapDistribution::mass_second() const {
  return {cell_measure * second[0][0] + cell_measure * second[1][0],
          cell_measure * second[0][1] + cell_measure * second[1][1]};
}

SwapDistribution swap_distribution(const CounterexampleReport& report, double measure) {
  if (!(measure > 0.0)) throw InvalidInput("domain measure must be positive");
  const auto& a = report.states[0].components;
  const auto& b = report.states[1].components;
  return {{a, b}, {b, a}, 0.5 * measure};
}

IntegralResult integral_counterexample(const CounterexampleReport& report,
                                       const std::array<double, 2>& weight, double measure) {
  IntegralResult out;
  out.distribution = swap_distribution(report, measure);
  const auto& d = out.distribution;
  out.masses_equal = d.mass_first() == d.mass_second();

  auto pressure = [&](const std::array<double, 2>& c) {
    return counterexample_pressure(c, report.m1, report.m2, report.gamma);
  };
  auto dot = [&](const std::array<double, 2>& c) { return weight[0] * c[0] + weight[1] * c[1]; };

  out.value = 0.0;
  for (std::size_t cell = 0; cell < 2; ++cell) {
    out.value += d.cell_measure * (pressure(d.first[cell]) - pressure(d.second[cell])) *
                 (dot(d.first[cell]) - dot(d.second[cell]));
  }
  const auto& a = report.states[0].components;
  const auto& b = report.states[1].components;
  out.reduced_value = measure * (pressure(a) - pressure(b)) * (dot(a) - dot(b));
  return out;
}

std::array<double, 2> WeightSpec::resolve(double m1, double m2) const {
  if (kind == Kind::inverse_molar) return {1.0 / m1, 1.0 / m2};
  return fixed;
}

SearchResult weight_search(const WeightSpec& weight, ParameterRange m1_range,
                           ParameterRange m2_range, ParameterRange gamma_range,
                           std::size_t samples, std::uint64_t seed) {
  for (const ParameterRange* r : {&m1_range, &m2_range, &gamma_range}) {
    if (!(r->hi >= r->lo) || !std::isfinite(r->lo) || !std::isfinite(r->hi)) {
      throw InvalidInput("search ranges must be non-empty");
    }
  }
  if (!(m2_range.lo > 0.0)) throw InvalidInput("M2 range must be positive");
  if (!(gamma_range.lo > 1.0)) throw InvalidInput("gamma range must exceed 1");

  std::mt19937_64 rng(seed);
  SearchResult result;
  for (std::size_t k = 0; k < samples; ++k) {
    const double m1 = draw(rng, m1_range);
    const double m2 = draw(rng, m2_range);
    const double gamma = draw(rng, gamma_range);
    result.draws = k + 1;
    if (!(m1 > m2)) continue;
    const auto w = weight.resolve(m1, m2);
    for (CounterexampleCase which : {CounterexampleCase::tilde_rho, CounterexampleCase::total_rho}) {
      const CounterexampleReport report = which == CounterexampleCase::tilde_rho
                                              ? case_tilde_rho(m1, m2, gamma)
                                              : case_total_rho(m1, m2, gamma);
      if (!report.components_positive) continue;
      const double value = integral_counterexample(report, w, 1.0).value;
      if (value < 0.0) {
        result.found = true;
        result.m1 = m1;
        result.m2 = m2;
        result.gamma = gamma;
        result.which = which;
        result.weight = w;
        result.integral = value;
        return result;
      }
    }
  }
  return result;
}

double reevaluate(const SearchResult& hit) {
  const CounterexampleReport report = hit.which == CounterexampleCase::tilde_rho
                                          ? case_tilde_rho(hit.m1, hit.m2, hit.gamma)
                                          : case_total_rho(hit.m1, hit.m2, hit.gamma);
  return integral_counterexample(report, hit.weight, 1.0).value;
}

std::string to_string(CounterexampleCase which) {
  return which == CounterexampleCase::tilde_rho ? "tilde" : "total";
}

}  // namespace multifluid
