#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hbac/asymptotics.hpp"
#include "hbac/engine.hpp"
#include "hbac/verification.hpp"

using namespace hbac;
using Catch::Matchers::WithinAbs;

TEST_CASE("asymptotic p0 closed form", "[asymptotics]") {
  REQUIRE_THAT(asymptotic_p0(2, make_thermal_reset(0.2)),
               WithinAbs(0.41307920764359346, 1e-14));
  // zero polarization: uniform limit
  REQUIRE_THAT(asymptotic_p0(3, make_thermal_reset(0.0)), WithinAbs(0.125, 1e-15));
  // n=1 with level ratio 2/3: limit marginal is {0.6, 0.4}
  REQUIRE_THAT(asymptotic_p0(1, ResetDistribution<double>({0.6, 0.4})),
               WithinAbs(0.6, 1e-14));
  // stays accurate arbitrarily close to q = 1
  REQUIRE_THAT(asymptotic_p0(4, make_thermal_reset(1e-13)), WithinAbs(0.0625, 1e-10));
  REQUIRE_THROWS_AS(asymptotic_p0(0, make_thermal_reset(0.2)), invalid_parameter);
}

TEST_CASE("asymptotic p0 is exact in the rational backend", "[asymptotics]") {
  const ResetDistribution<Rational> r({Rational(3, 5), Rational(2, 5)});
  REQUIRE(asymptotic_p0(1, r) == Rational(3, 5));
  REQUIRE(asymptotic_p0(2, r) == Rational(27, 65));
  const auto limit = asymptotic_state(2, r);
  REQUIRE(limit[0] == Rational(27, 65));
  REQUIRE(limit[1] == Rational(18, 65));
  REQUIRE(limit[2] == Rational(12, 65));
  REQUIRE(limit[3] == Rational(8, 65));
}

TEST_CASE("asymptotic state is geometric and saturated", "[asymptotics]") {
  const auto m = asymptotic_state(2, ResetDistribution<double>({0.6, 0.4}));
  REQUIRE_THAT(m[0], WithinAbs(0.4153846153846154, 1e-14));
  REQUIRE_THAT(m[1], WithinAbs(0.27692307692307694, 1e-14));
  REQUIRE_THAT(m[2], WithinAbs(0.18461538461538463, 1e-14));
  REQUIRE_THAT(m[3], WithinAbs(0.12307692307692308, 1e-14));

  // every consecutive distance sits exactly at saturation
  for (int n = 1; n <= 12; ++n) {
    for (double eps : {0.0, 0.05, 0.5, 1.0, 2.0}) {
      // the deepest entry is ~e^(-2 eps (2^n - 1)); skip what underflows
      if (std::ldexp(2.0 * eps, n) > 600.0) continue;
      const auto reset = make_thermal_reset(eps);
      const auto limit = asymptotic_state(n, reset);
      const auto d = pairwise_distances(limit);
      for (double di : d) REQUIRE_THAT(di, WithinAbs(reset.log_ratio(), 1e-12));
      REQUIRE_THAT(limit[0], WithinAbs(asymptotic_p0(n, reset), 1e-12));
    }
  }
}

TEST_CASE("asymptotic state only depends on the level ratio", "[asymptotics]") {
  // a k=3 reset with the same a_1/a_k and an arbitrary interior level
  // yields the identical limit marginal
  const ResetDistribution<double> two({0.6, 0.4});
  const auto three = ResetDistribution<double>::normalized({0.6, 0.52, 0.4});
  for (int n = 1; n <= 4; ++n) {
    const auto limit2 = asymptotic_state(n, two);
    const auto limit3 = asymptotic_state(n, three);
    for (std::size_t i = 0; i < limit2.size(); ++i) {
      REQUIRE_THAT(limit3[i], WithinAbs(limit2[i], 1e-14));
    }
  }
}

TEST_CASE("polarization limits double per qubit removed", "[asymptotics]") {
  const auto r = make_thermal_reset(0.1);
  REQUIRE_THAT(qubit1_polarization_limit(1, r), WithinAbs(0.1, 1e-12));
  REQUIRE_THAT(qubit1_polarization_limit(3, r), WithinAbs(0.4, 1e-12));
  REQUIRE_THAT(qubit1_polarization_limit(6, r), WithinAbs(3.2, 1e-11));

  REQUIRE_THAT(qubit_polarization_limit(3, 1, r), WithinAbs(0.4, 1e-12));
  REQUIRE_THAT(qubit_polarization_limit(3, 2, r), WithinAbs(0.2, 1e-12));
  REQUIRE_THAT(qubit_polarization_limit(3, 3, r), WithinAbs(0.1, 1e-12));
  REQUIRE_THROWS_AS(qubit_polarization_limit(3, 4, r), invalid_parameter);
  REQUIRE_THROWS_AS(qubit_polarization_limit(3, 0, r), invalid_parameter);
}

TEST_CASE("polarization limits match the asymptotic state", "[asymptotics]") {
  for (int n = 1; n <= 6; ++n) {
    for (double eps : {0.05, 0.2, 0.7}) {
      const auto reset = make_thermal_reset(eps);
      const auto joint = tensor_with_reset(asymptotic_state(n, reset), reset);
      for (int j = 1; j <= n; ++j) {
        REQUIRE_THAT(qubit_polarization(joint, j),
                     WithinAbs(qubit_polarization_limit(n, j, reset), 1e-11));
      }
    }
  }
}

TEST_CASE("effective temperature", "[asymptotics]") {
  // equal gaps: T_eff = T_bath / 2^(n-1)
  REQUIRE_THAT(effective_temperature(3, {1.0, 1.0, 300.0}), WithinAbs(75.0, 1e-12));
  REQUIRE_THAT(effective_temperature(1, {1.0, 1.0, 300.0}), WithinAbs(300.0, 1e-12));
  // gap ratio 1/660 at n=3
  REQUIRE_THAT(effective_temperature(3, {1.0, 660.0, 300.0}),
               WithinAbs(0.11363636363636363, 1e-15));
  // the ratio scales linearly
  REQUIRE_THAT(effective_temperature(4, {2.0, 660.0, 300.0}),
               WithinAbs(2.0 * effective_temperature(4, {1.0, 660.0, 300.0}), 1e-15));
  REQUIRE_THROWS_AS(effective_temperature(3, {0.0, 1.0, 300.0}), invalid_parameter);
  REQUIRE_THROWS_AS(effective_temperature(3, {1.0, -1.0, 300.0}), invalid_parameter);
}

TEST_CASE("cooling bound", "[asymptotics]") {
  REQUIRE_THAT(schulman_upper_bound(2, 0.2), WithinAbs(0.5563852321231169, 1e-14));
  REQUIRE_THAT(schulman_upper_bound(2, 1.0), WithinAbs(13.649537508286059, 1e-12));
  REQUIRE_THAT(schulman_upper_bound(3, 0.0), WithinAbs(0.125, 1e-15));
  REQUIRE_THROWS_AS(schulman_upper_bound(0, 0.2), invalid_parameter);
  REQUIRE_THROWS_AS(schulman_upper_bound(2, -0.1), invalid_parameter);
}

TEST_CASE("cooling bound dominates the reachable top eigenvalue", "[asymptotics]") {
  for (int n = 1; n <= 6; ++n) {
    for (int i = 0; i <= 20; ++i) {
      const double eps = 0.05 * i;
      const auto reset = make_thermal_reset(eps);
      const double lambda1 = reset[0] * asymptotic_p0(n, reset);
      REQUIRE(lambda1 <= schulman_upper_bound(n, eps) + 1e-15);
    }
  }
}

TEST_CASE("prediction bundle", "[asymptotics]") {
  const auto pred = predict(3, make_thermal_reset(0.1));
  REQUIRE(pred.n == 3);
  REQUIRE_THAT(pred.qubit1_polarization_limit, WithinAbs(0.4, 1e-12));
  REQUIRE_THAT(pred.lambda1_limit, WithinAbs(pred.reset[0] * pred.p0_infinity, 1e-15));
  REQUIRE(pred.schulman_bound.has_value());
  REQUIRE(pred.per_qubit_polarizations.size() == 3);
  REQUIRE_THAT(pred.per_qubit_polarizations[2], WithinAbs(0.1, 1e-12));

  // composite resets have no unambiguous bath polarization for the bound
  const auto q = make_thermal_reset(0.1);
  const auto pred4 = predict(2, make_tensor_reset<double>({q, q}));
  REQUIRE_FALSE(pred4.schulman_bound.has_value());
}

TEST_CASE("block prediction: already-saturated state is kept", "[asymptotics]") {
  const ResetDistribution<double> r({0.75, 0.25});  // log ratio ~1.1
  const ComputationMarginal<double> m({0.8, 0.2});  // distance ~1.39
  const auto bs = block_predict(m, r);
  using Range = std::pair<std::size_t, std::size_t>;
  REQUIRE(bs.boundaries.size() == 2);
  REQUIRE((bs.boundaries[0] == Range{0, 0}));
  REQUIRE((bs.boundaries[1] == Range{1, 1}));
  REQUIRE_THAT(bs.predicted_marginal[0], WithinAbs(0.8, 1e-15));
  REQUIRE_THAT(bs.predicted_marginal[1], WithinAbs(0.2, 1e-15));
}

TEST_CASE("block prediction: single block reproduces the closed form", "[asymptotics]") {
  for (int n = 1; n <= 5; ++n) {
    const auto reset = make_thermal_reset(0.3);
    std::vector<double> uniform(std::size_t{1} << n, std::ldexp(1.0, -n));
    const auto bs = block_predict(ComputationMarginal<double>(std::move(uniform)), reset);
    REQUIRE(bs.boundaries.size() == 1);
    const auto limit = asymptotic_state(n, reset);
    for (std::size_t i = 0; i < limit.size(); ++i) {
      REQUIRE_THAT(bs.predicted_marginal[i], WithinAbs(limit[i], 1e-13));
    }
  }
}

TEST_CASE("block prediction: two blocks relax independently", "[asymptotics]") {
  const auto reset = ResetDistribution<double>::normalized({1.0, std::exp(-0.2)});
  const auto bs = block_predict(ComputationMarginal<double>({0.35, 0.30, 0.25, 0.10}), reset);
  using Range = std::pair<std::size_t, std::size_t>;
  REQUIRE(bs.boundaries.size() == 2);
  REQUIRE((bs.boundaries[0] == Range{0, 2}));
  REQUIRE((bs.boundaries[1] == Range{3, 3}));
  REQUIRE_THAT(bs.block_masses[0], WithinAbs(0.9, 1e-15));
  REQUIRE_THAT(bs.block_masses[1], WithinAbs(0.1, 1e-15));
  REQUIRE_THAT(bs.predicted_marginal[0], WithinAbs(0.3615836206800199, 1e-13));
  REQUIRE_THAT(bs.predicted_marginal[1], WithinAbs(0.29603963006001605, 1e-13));
  REQUIRE_THAT(bs.predicted_marginal[2], WithinAbs(0.24237674925996408, 1e-13));
  REQUIRE_THAT(bs.predicted_marginal[3], WithinAbs(0.1, 1e-13));
}

TEST_CASE("block prediction merges boundaries that relaxation erases", "[asymptotics]") {
  // distance 0.25 boundary barely clears L = 0.2, but redistributing the
  // top-heavy first block pushes its last entry down far enough that the
  // boundary falls below L and the blocks must merge.
  const auto reset = ResetDistribution<double>::normalized({1.0, std::exp(-0.2)});
  std::vector<double> p{0.4, 0.39, 0.39 * std::exp(-0.25)};
  p.push_back(p[2] * 0.95);
  double sum = 0.0;
  for (double x : p) sum += x;
  for (double& x : p) x /= sum;
  const auto bs = block_predict(ComputationMarginal<double>(p), reset);
  REQUIRE(bs.boundaries.size() == 1);
  // merged: the prediction is the closed-form limit of the whole mass
  const auto limit = asymptotic_state(2, reset);
  for (std::size_t i = 0; i < limit.size(); ++i) {
    REQUIRE_THAT(bs.predicted_marginal[i], WithinAbs(limit[i], 1e-13));
  }
}

TEST_CASE("block prediction conserves block masses", "[asymptotics]") {
  SeededRng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(rng.integer(1, 5));
    const double log_ratio = rng.uniform(0.1, 1.0);
    const auto reset = random_reset(rng, 2, log_ratio);
    const auto m = random_straddling_marginal(rng, n, log_ratio);
    const auto bs = block_predict(m, reset);

    double total = 0.0;
    for (std::size_t b = 0; b < bs.boundaries.size(); ++b) {
      double pred_mass = 0.0, init_mass = 0.0;
      for (std::size_t i = bs.boundaries[b].first; i <= bs.boundaries[b].second; ++i) {
        pred_mass += bs.predicted_marginal[i];
        init_mass += m[i];
      }
      REQUIRE_THAT(pred_mass, WithinAbs(init_mass, 1e-12));
      REQUIRE_THAT(pred_mass, WithinAbs(bs.block_masses[b], 1e-12));
      total += pred_mass;
    }
    REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));

    // inside blocks distances saturate; across boundaries they stay >= L
    const auto d = pairwise_distances(bs.predicted_marginal);
    for (std::size_t b = 0; b < bs.boundaries.size(); ++b) {
      for (std::size_t i = bs.boundaries[b].first; i < bs.boundaries[b].second; ++i) {
        REQUIRE_THAT(d[i], WithinAbs(reset.log_ratio(), 1e-9));
      }
      if (b + 1 < bs.boundaries.size()) {
        REQUIRE(d[bs.boundaries[b].second] >= reset.log_ratio() - 1e-9);
      }
    }
  }
}

TEST_CASE("block prediction validates its input", "[asymptotics]") {
  const auto reset = make_thermal_reset(0.2);
  REQUIRE_THROWS_AS(block_predict(ComputationMarginal<double>({0.3, 0.7}), reset),
                    invalid_parameter);
  REQUIRE_THROWS_AS(block_predict(ComputationMarginal<double>({0.6, 0.4, 0.0, 0.0}), reset),
                    singular_distance);
}
