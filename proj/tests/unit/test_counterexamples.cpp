#include <doctest.h>

#include <cmath>

#include "multifluid/counterexamples.hpp"
#include "multifluid/error.hpp"

using namespace multifluid;

// Reference values below were evaluated independently in 30-digit arithmetic.

TEST_CASE("tilde case with M = (2, 1), gamma = 2") {
  const auto r = case_tilde_rho(2.0, 1.0, 2.0);
  CHECK(r.epsilon == doctest::Approx(std::sqrt(2.0) / 9.0).epsilon(1e-15));
  CHECK(r.epsilon == doctest::Approx(0.157134840263677227645).epsilon(1e-15));
  CHECK(r.states[0].rho == doctest::Approx(1.84286515973632277236).epsilon(1e-15));
  CHECK(r.states[1].rho == doctest::Approx(1.37607298505910207628).epsilon(1e-14));
  CHECK(r.states[0].tilde_rho == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.states[1].tilde_rho == doctest::Approx(1.18920711500272106672).epsilon(1e-15));
  CHECK(r.states[0].pressure == doctest::Approx(1.84286515973632277236).epsilon(1e-14));
  CHECK(r.states[1].pressure == doctest::Approx(1.63643578459531727102).epsilon(1e-14));
  CHECK(r.product_tilde == doctest::Approx(-0.0390579065222440772083).epsilon(1e-12));
  CHECK(r.product_total == doctest::Approx(0.0963596169393297596359).epsilon(1e-12));
  CHECK(r.states[0].components[0] == doctest::Approx(1.68573031947264554471).epsilon(1e-14));
  CHECK(r.states[0].components[1] == doctest::Approx(0.157134840263677227645).epsilon(1e-13));
  CHECK(r.states[1].components[0] == doctest::Approx(0.373731740112762019125).epsilon(1e-13));
  CHECK(r.states[1].components[1] == doctest::Approx(1.00234124494634005716).epsilon(1e-14));
  CHECK(r.components_positive);
  CHECK(r.violated());
  CHECK_FALSE(r.near_degenerate);
}

TEST_CASE("tilde case approaches zero as M1 -> M2") {
  const auto r = case_tilde_rho(1.0 + 1e-6, 1.0, 2.0);
  CHECK(r.epsilon > 0.0);
  CHECK(r.epsilon < 1e-6);
  CHECK(r.product_tilde <= 0.0);
  CHECK(std::abs(r.product_tilde) < 1e-9);
  CHECK(r.near_degenerate);
  CHECK(r.verdict().find("near-degenerate") != std::string::npos);
}

TEST_CASE("tilde case holds across the parameter grid") {
  int failures = 0;
  for (int a = 0; a < 100; ++a) {
    const double q = 1.01 * std::pow(100.0 / 1.01, a / 99.0);
    for (int b = 0; b < 100; ++b) {
      const double gamma = 1.05 + (5.0 - 1.05) * b / 99.0;
      const auto r = case_tilde_rho(q, 1.0, gamma);
      if (!(r.product_tilde < 0.0 && r.components_positive)) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("total case with r = 1.3") {
  const auto r = case_total_rho(2.0, 1.0, 2.0, 1.3);
  CHECK(r.epsilon == doctest::Approx(0.304347826086956521739).epsilon(1e-15));
  CHECK(r.epsilon > 0.0);
  CHECK(r.epsilon < 1.0);
  CHECK(r.states[0].rho == doctest::Approx(1.69565217391304347826).epsilon(1e-15));
  CHECK(r.states[1].rho == doctest::Approx(1.55113971522094052181).epsilon(1e-14));
  CHECK(r.states[0].pressure == doctest::Approx(1.69565217391304347826).epsilon(1e-14));
  CHECK(r.states[1].pressure == doctest::Approx(1.84462638570403702018).epsilon(1e-14));
  CHECK(r.product_total == doctest::Approx(-0.0215286296276345514205).epsilon(1e-12));
  CHECK(r.product_tilde == doctest::Approx(0.0281869808227782398189).epsilon(1e-12));
  CHECK(r.states[1].components[0] == doctest::Approx(0.723865200436438910176).epsilon(1e-13));
  CHECK(r.states[1].components[1] == doctest::Approx(0.827274514784501611630).epsilon(1e-13));
  CHECK(r.violated());
}

TEST_CASE("total case ratio bounds") {
  const auto b = total_rho_ratio_bounds(2.0, 1.0, 2.0);
  CHECK(b.lower == doctest::Approx(1.18920711500272106672).epsilon(1e-15));
  CHECK(b.upper == doctest::Approx(1.41421356237309504880).epsilon(1e-15));
  CHECK_THROWS_AS(case_total_rho(2.0, 1.0, 2.0, b.lower), InvalidInput);
  CHECK_THROWS_AS(case_total_rho(2.0, 1.0, 2.0, b.upper), InvalidInput);
  CHECK_THROWS_AS(case_total_rho(2.0, 1.0, 2.0, 1.0), InvalidInput);
  CHECK(case_total_rho(2.0, 1.0, 2.0).ratio == doctest::Approx(std::sqrt(b.lower * b.upper)));
}

TEST_CASE("total case holds for interior ratios") {
  for (double q : {1.05, 1.5, 2.0, 7.0, 40.0}) {
    for (double gamma : {1.1, 1.4, 2.0, 3.5}) {
      const auto b = total_rho_ratio_bounds(q, 1.0, gamma);
      for (int k = 1; k < 20; ++k) {
        const double r = b.lower + (b.upper - b.lower) * k / 20.0;
        const auto rep = case_total_rho(q, 1.0, gamma, r);
        CHECK(rep.epsilon > 0.0);
        CHECK(rep.epsilon < q - 1.0);
        CHECK(rep.product_total < 0.0);
      }
    }
  }
}

TEST_CASE("invalid counterexample parameters") {
  CHECK_THROWS_AS(case_tilde_rho(1.0, 2.0, 2.0), InvalidInput);
  CHECK_THROWS_AS(case_tilde_rho(1.0, 1.0, 2.0), InvalidInput);
  CHECK_THROWS_AS(case_tilde_rho(2.0, 1.0, 1.0), InvalidInput);
}

TEST_CASE("integral counterexample") {
  const auto tilde = case_tilde_rho(2.0, 1.0, 2.0);
  auto res = integral_counterexample(tilde, {0.5, 1.0}, 1.0);
  CHECK(res.masses_equal);
  CHECK(res.value == doctest::Approx(-0.0390579065222440772083).epsilon(1e-12));
  CHECK(std::abs(res.value - tilde.product_tilde) <= 1e-12);

  const auto total = case_total_rho(2.0, 1.0, 2.0, 1.3);
  res = integral_counterexample(total, {1.0, 1.0}, 1.0);
  CHECK(res.value == doctest::Approx(-0.0215286296276345514205).epsilon(1e-12));

  CHECK(integral_counterexample(total, {0.0, 0.0}, 1.0).value == 0.0);

  for (double measure : {0.5, 1.0, 3.0}) {
    for (std::array<double, 2> w : {std::array<double, 2>{1, 0}, {0, 1}, {1, 1}, {0.5, 1}}) {
      res = integral_counterexample(tilde, w, measure);
      CHECK(res.masses_equal);
      CHECK(std::abs(res.value - res.reduced_value) <= 1e-12 * std::max(1.0, std::abs(res.value)));
    }
  }
  CHECK_THROWS_AS(integral_counterexample(tilde, {1, 0}, 0.0), InvalidInput);
}

TEST_CASE("weight search") {
  const auto hit = weight_search(WeightSpec::constant(1.0, 0.0), {1.5, 3.0}, {0.5, 1.0}, {1.2, 3.0}, 1000, 0);
  REQUIRE(hit.found);
  CHECK(hit.integral < 0.0);
  CHECK(reevaluate(hit) == hit.integral);

  const auto again = weight_search(WeightSpec::constant(1.0, 0.0), {1.5, 3.0}, {0.5, 1.0}, {1.2, 3.0}, 1000, 0);
  CHECK(again.m1 == hit.m1);
  CHECK(again.draws == hit.draws);

  const auto inverse = weight_search(WeightSpec::inverse_molar(), {1.5, 3.0}, {0.5, 1.0}, {1.2, 3.0}, 1000, 9);
  REQUIRE(inverse.found);
  CHECK(inverse.draws == 1);
  CHECK(inverse.which == CounterexampleCase::tilde_rho);

  const auto none = weight_search(WeightSpec::constant(1.0, 0.0), {1.5, 3.0}, {0.5, 1.0}, {1.2, 3.0}, 0, 0);
  CHECK_FALSE(none.found);
  CHECK(none.draws == 0);
}

TEST_CASE("to_string") {
  CHECK(to_string(CounterexampleCase::tilde_rho) == "tilde");
  CHECK(to_string(CounterexampleCase::total_rho) == "total");
}
