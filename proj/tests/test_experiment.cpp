#include <doctest.h>

#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/experiment.hpp"

using namespace casimir;
using namespace casimir::experiment;

namespace {
double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

const MaterialMirror aluminium{"Al", 15.0, 150.0};
const MaterialMirror palladium{"Pd", 7.4, 8.3};
const MaterialMirror nickel{"Ni", 9.5, 38.0};
} // namespace

TEST_CASE("rms estimate") {
  CHECK(rel(rms_energy_estimate(1.0, 100.0), 1.881478208609995e-4) < 1e-12);
  CHECK(rel(rms_energy_estimate(1.0, 100.0), 1.9e-4) < 0.02);

  const double small = rms_energy_estimate(1e-4, 33.0) / 1e-4;
  CHECK(rel(small, 0.05701449116999985) < 1e-12);
  CHECK(rel(small, 0.06) < 0.05);
  CHECK(rel(rms_energy_estimate(1e-4, 33.0), 5.8e-6) < 0.02);

  const double large = rms_energy_estimate(0.2, 33.0) / 0.2;
  CHECK(rel(large, 1.2748827795868119e-3) < 1e-12);
  CHECK(rel(large, 0.0013) < 0.05);

  // fractional fluctuation goes as 1 / sqrt(K)
  for (double K : {1e-4, 0.01, 1.0})
    CHECK(rel(rms_energy_estimate(4.0 * K, 50.0) / (4.0 * K),
              0.5 * rms_energy_estimate(K, 50.0) / K) < 1e-14);

  CHECK_THROWS_AS(rms_energy_estimate(0.0, 33.0), DomainError);
  CHECK_THROWS_AS(rms_energy_estimate(1.0, -1.0), DomainError);
}

TEST_CASE("minkowski fluctuation and enhancement") {
  CHECK(rel(minkowski_rms_energy(1.0, 1.0), 1.3674394930906494e-8) < 1e-12);
  CHECK(rel(minkowski_rms_energy(2.0, 1.0), 2.0 * minkowski_rms_energy(1.0, 1.0)) < 1e-15);
  CHECK(rel(minkowski_rms_energy(1.0, 2.0), 0.25 * minkowski_rms_energy(1.0, 1.0)) < 1e-15);

  const auto r = enhancement_ratio(1.0, 1.0, 100.0);
  CHECK(rel(r.printed_formula, 19458.35273421712) < 1e-12);
  CHECK(rel(r.printed_formula, 1.9e4) < 0.03);
  CHECK(rel(r.direct_quotient, 13759.13316908472) < 1e-12);
  CHECK(rel(r.printed_formula / r.direct_quotient, std::sqrt(2.0)) < 1e-12);

  for (double K : {1e-3, 0.5, 7.0})
    for (double a : {0.3, 1.0, 10.0}) {
      const auto x = enhancement_ratio(K, a, 40.0);
      CHECK(rel(x.printed_formula / x.direct_quotient, std::sqrt(2.0)) < 1e-12);
    }
  CHECK(rel(enhancement_ratio(1.0, 10.0, 100.0).printed_formula, 100.0 * r.printed_formula) <
        1e-13);
}

TEST_CASE("regime classification") {
  const auto al = regime_classify(aluminium, 33.0);
  CHECK(al.regime == MirrorRegime::PerfectMirror);
  CHECK(al.omega_p_distance == doctest::Approx(2.5085267).epsilon(1e-7));

  const auto pd = regime_classify(palladium, 2.3);
  CHECK(pd.regime == MirrorRegime::Transparent);
  CHECK(pd.omega_p_thickness == doctest::Approx(0.31126002).epsilon(1e-7));
  CHECK(pd.transparent_threshold == default_transparent_threshold);

  const auto ni = regime_classify(nickel, 2.3);
  CHECK(ni.regime == MirrorRegime::Partial);
  CHECK(ni.omega_p_distance == doctest::Approx(0.11072992).epsilon(1e-7));

  // the threshold is configurable
  CHECK(regime_classify(palladium, 2.3, 0.3).regime == MirrorRegime::Partial);
  CHECK(regime_classify(nickel, 2.3, 2.0).regime == MirrorRegime::Transparent);

  CHECK(to_string(MirrorRegime::PerfectMirror) == "perfect-mirror");
  CHECK(to_string(MirrorRegime::Partial) == "partial");
  CHECK(to_string(MirrorRegime::Transparent) == "transparent");

  CHECK_THROWS_AS(regime_classify(aluminium, 0.0), DomainError);
  CHECK_THROWS_AS(regime_classify({"x", -1.0, 1.0}, 1.0), DomainError);
}

TEST_CASE("plasma length scales") {
  CHECK(quoted_inverse_plasma_length("Al") == 14.0);
  CHECK(quoted_inverse_plasma_length("Pd") == 22.0);
  CHECK(quoted_inverse_plasma_length("Ni") == 27.0);
  CHECK_FALSE(quoted_inverse_plasma_length("Au").has_value());
}

TEST_CASE("default scenario report") {
  const auto s = default_scenario();
  const auto rows = moddel_report(s.configs());
  REQUIRE(rows.size() == 4);
  const double cavities[] = {33.0, 79.0, 230.0, 1100.0};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rows[i].cavity_thickness == cavities[i]);
    CHECK(rows[i].z0 == cavities[i]);
    CHECK(rows[i].kinetic_energy == doctest::Approx(1e-4));
    if (i > 0) {
      CHECK(rows[i].rms_energy < rows[i - 1].rms_energy);
      CHECK(rows[i].rms_over_kinetic < rows[i - 1].rms_over_kinetic);
    }
  }
  CHECK(rel(rows[0].rms_over_kinetic, 0.05701449116999985) < 1e-12);
  CHECK(rel(rows[0].rms_over_kinetic, 0.06) < 0.05);
  CHECK(rel(rows[3].rms_over_kinetic, 1.7104347351e-3) < 1e-9);
  CHECK(rel(rows[3].rms_over_kinetic, 0.06 * 33.0 / 1100.0) < 0.05);

  REQUIRE(rows[0].mirrors.size() == 3);
  const auto& al = rows[0].mirrors[0];
  CHECK(al.name == "Al");
  CHECK(al.distance == 33.0);
  CHECK(al.assessment.regime == MirrorRegime::PerfectMirror);
  CHECK(al.inverse_plasma_length == doctest::Approx(13.155132).epsilon(1e-7));
  CHECK(al.quoted_inverse_plasma_length == 14.0);

  const auto& pd = rows[0].mirrors[1];
  CHECK(pd.distance == 2.3);
  CHECK(pd.assessment.regime == MirrorRegime::Transparent);
  CHECK(pd.inverse_plasma_length == doctest::Approx(26.665808).epsilon(1e-7));

  const auto& ni = rows[0].mirrors[2];
  CHECK(ni.assessment.regime == MirrorRegime::Partial);
  CHECK(ni.inverse_plasma_length == doctest::Approx(20.771261).epsilon(1e-7));
  CHECK(ni.quoted_inverse_plasma_length == 27.0);
}

TEST_CASE("custom configurations") {
  ExperimentConfig single{50.0, 2.0, 5.0, {aluminium}, 1e-3};
  const auto rows = moddel_report({single});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mirrors.size() == 1);
  CHECK(rows[0].kinetic_energy == 1e-3);

  CHECK_THROWS_AS(moddel_report({}), DomainError);
  ExperimentConfig bad = single;
  bad.mirrors.clear();
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = single;
  bad.applied_voltage = 0.0;
  CHECK_THROWS_AS(moddel_report({bad}), DomainError);
  Scenario empty = default_scenario();
  empty.cavities.clear();
  CHECK_THROWS_AS(empty.configs(), DomainError);
}
