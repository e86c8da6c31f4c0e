#include <doctest.h>

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/units.hpp"

using namespace casimir;
using casimir::units::Constants;

TEST_CASE("constants") {
  const double e = Constants::elementary_charge_natural();
  CHECK(e * e == doctest::Approx(4.0 * std::numbers::pi * Constants::alpha).epsilon(1e-15));
  CHECK(e == doctest::Approx(0.30282212096456423).epsilon(1e-14));
  CHECK(Constants::hbar_c > 0.0);
  CHECK(Constants::alpha > 0.0);
  CHECK(Constants::electron_mass > 0.0);
}

TEST_CASE("length conversion") {
  CHECK(units::length_to_natural(197.3269804) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(units::length_to_natural(100.0) == doctest::Approx(0.50677307176793955).epsilon(1e-14));
  CHECK(units::length_to_natural(33.0) == doctest::Approx(0.16723511368342005).epsilon(1e-14));
  CHECK_THROWS_AS(units::length_to_natural(0.0), DomainError);
  CHECK_THROWS_AS(units::length_to_natural(-3.0), DomainError);
  CHECK_THROWS_AS(units::natural_to_length(0.0), DomainError);

  for (double x = 1e-3; x <= 1e6; x *= 3.7) {
    const double back = units::natural_to_length(units::length_to_natural(x));
    CHECK(std::abs(back - x) / x <= 1e-14);
  }
  CHECK(units::coordinate_to_natural(-197.3269804) == doctest::Approx(-1.0));
  CHECK(units::coordinate_to_natural(0.0) == 0.0);
}

TEST_CASE("speed from kinetic energy") {
  const double m = Constants::electron_mass;
  CHECK(units::speed_from_kinetic(0.0, m) == 0.0);
  CHECK(units::speed_from_kinetic(1.0, m) == doctest::Approx(1.9783585031834768e-3).epsilon(1e-14));
  CHECK(units::speed_from_kinetic(1e-4, m) ==
        doctest::Approx(1.9783585031834768e-5).epsilon(1e-14));

  CHECK(units::speed_from_kinetic(2.0, m) > units::speed_from_kinetic(1.0, m));
  CHECK(units::speed_from_kinetic(1.0, 2.0 * m) < units::speed_from_kinetic(1.0, m));

  CHECK_THROWS_AS(units::speed_from_kinetic(-1.0, m), DomainError);
  CHECK_THROWS_AS(units::speed_from_kinetic(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(units::speed_from_kinetic(m / 2.0, m), RegimeError);
  CHECK_THROWS_AS(units::speed_from_kinetic(m, m), RegimeError);
}

TEST_CASE("charge") {
  CHECK(units::charge_natural(1.0) == doctest::Approx(0.30282212096456423).epsilon(1e-14));
  CHECK(units::charge_natural(0.0) == 0.0);
  CHECK(units::charge_natural(2.0) == doctest::Approx(0.60564424192912846).epsilon(1e-14));
}
