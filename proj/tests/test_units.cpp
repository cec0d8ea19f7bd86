#include <doctest.h>

#include <cmath>
#include <limits>

#include "ddpol/errors.hpp"
#include "ddpol/units.hpp"

using namespace ddpol;

TEST_SUITE("units") {
  TEST_CASE("build_scaled converts angstrom to bohr") {
    const double bohr_per_a = 1.889726;  // reference conversion, 7 figures
    SUBCASE("2a = 1 A, p = 0.5") {
      const auto s = build_scaled({1.0, 1.0, 0.5}, 0.5);
      const double expect = 0.5 / (2.0 * 0.5 * bohr_per_a);
      CHECK(s.g_prime == doctest::Approx(expect).epsilon(1e-6));
      CHECK(s.g_prime == doctest::Approx(0.26459).epsilon(2e-5));
    }
    SUBCASE("2a = 0.74 A, p = 1.22") {
      const auto s = build_scaled({1.0, 1.0, 0.37}, 1.22);
      CHECK(s.a == doctest::Approx(0.69920).epsilon(1e-5));
      CHECK(s.g_prime == doctest::Approx(0.87243).epsilon(2e-5));
    }
  }

  TEST_CASE("p survives the round trip and equals 2 g' a") {
    for (double p : {1e-3, 0.5, 1.22, 3.7, 4.99}) {
      const auto s = build_scaled({1.0, 1.0, 0.61}, p);
      CHECK(s.p == p);
      CHECK(2.0 * s.g_prime * s.a == doctest::Approx(p).epsilon(1e-15));
    }
  }

  TEST_CASE("degenerate region is refused without the override") {
    CHECK_THROWS_AS(build_scaled({1.0, 1.0, 0.5}, 5.2), DegenerateRegionError);
    CHECK_THROWS_AS(build_scaled({1.0, 1.0, 0.5}, 5.0), DegenerateRegionError);
    CHECK_NOTHROW(build_scaled({1.0, 1.0, 0.5}, 5.2, true));
  }

  TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(build_scaled({0.0, 1.0, 0.5}, 1.0), ConfigError);
    CHECK_THROWS_AS(build_scaled({1.0, 0.0, 0.5}, 1.0), ConfigError);
    CHECK_THROWS_AS(build_scaled({1.0, 1.0, -0.5}, 1.0), ConfigError);
    CHECK_THROWS_AS(build_scaled({1.0, 1.0, 0.5}, 0.0), ConfigError);
    CHECK_THROWS_AS(build_scaled({1.0, 1.0, 0.5}, -1.0), ConfigError);
    CHECK_THROWS_AS(particle_only(-1.0, 1.0), ConfigError);
  }

  TEST_CASE("atomic unit factor is q^2 m") {
    const auto s = build_scaled({2.0, -3.0, 0.5}, 1.0);
    CHECK(s.atomic_units_factor() == doctest::Approx(18.0));
  }

  TEST_CASE("to_si_volume") {
    CHECK(to_si_volume(0.0).value_m3 == std::complex<double>(0.0, 0.0));
    CHECK(to_si_volume(1.0).value_m3.real() == doctest::Approx(1.481847e-31).epsilon(1e-6));
    CHECK(to_si_volume(3.158).value_m3.real() == doctest::Approx(4.68e-31).epsilon(0.01 / 4.68));
    const auto c = to_si_volume({2.0, -0.5}).value_m3;
    CHECK(c.imag() == doctest::Approx(-0.5 * 1.481847e-31).epsilon(1e-6));
    CHECK(to_si_volume(1.0).finite);
    CHECK_FALSE(to_si_volume(std::numeric_limits<double>::quiet_NaN()).finite);
  }

  TEST_CASE("to_si_volume is linear") {
    const std::complex<double> x(1.37, 0.2), y(-0.41, 5.5);
    const auto lhs = to_si_volume(x + y).value_m3;
    const auto rhs = to_si_volume(x).value_m3 + to_si_volume(y).value_m3;
    CHECK(std::abs(lhs - rhs) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(lhs));
  }
}
