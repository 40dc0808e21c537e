#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "oplab/errors.hpp"
#include "oplab/quad.hpp"
#include "oplab/specfun.hpp"

using namespace oplab;

TEST_SUITE("specfun") {

TEST_CASE("log_gamma at integer and half-integer points") {
  CHECK(specfun::log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-16));
  CHECK(specfun::log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-16));
  CHECK(std::abs(specfun::log_gamma(0.5) - 0.5723649429247001) < 1e-15);
  CHECK(std::abs(specfun::log_gamma(5.0) - std::log(24.0)) < 1e-14);
}

TEST_CASE("log_gamma matches std::lgamma across [1e-6, 1e6]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> expo(-6.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::pow(10.0, expo(rng));
    const double want = std::lgamma(x);
    const double got = specfun::log_gamma(x);
    // Near the zeros at 1 and 2 only an absolute bound is meaningful.
    CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("gamma and beta examples") {
  CHECK(specfun::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(specfun::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(specfun::beta(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(specfun::beta(0.5, 0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(specfun::beta(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(specfun::log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(specfun::log_gamma(-2.5), DomainError);
  CHECK_THROWS_AS(specfun::log_gamma(std::nan("")), DomainError);
  CHECK_THROWS_AS(specfun::beta(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(specfun::beta(1.0, -0.5), DomainError);
}

TEST_CASE("large arguments do not overflow") {
  const double m = 400.0;
  const double n = 300.0;
  const double want = std::lgamma(m) + std::lgamma(n) - std::lgamma(m + n);
  CHECK(specfun::log_beta(m, n) == doctest::Approx(want).epsilon(1e-13));
  CHECK(specfun::beta(m, n) > 0.0);
  CHECK(std::isfinite(specfun::beta(1e-8, 1e-8)));
}

TEST_CASE("property: symmetry over random pairs") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double m = 50.0 * (1.0 - u(rng));
    const double n = 50.0 * (1.0 - u(rng));
    const double lhs = specfun::beta(m, n);
    const double rhs = specfun::beta(n, m);
    REQUIRE(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
  }
}

TEST_CASE("property: Pascal recurrence") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 30.0);
  for (int i = 0; i < 5000; ++i) {
    const double m = u(rng);
    const double n = u(rng);
    const double lhs = specfun::beta(m, n);
    const double rhs = specfun::beta(m + 1.0, n) + specfun::beta(m, n + 1.0);
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * lhs);
  }
}

TEST_CASE("property: integral representation") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 50; ++i) {
    const double m = u(rng);
    const double n = u(rng);
    quad::SingularityHints h;
    h.left_exponent = m - 1.0;
    h.decay_exponent = n + 1.0;
    const double tol = 1e-10;
    const double integral = quad::integrate_semiaxis(
        [m, n](double x) { return std::exp((m - 1.0) * std::log(x) - (m + n) * std::log1p(x)); }, h, tol);
    REQUIRE(integral == doctest::Approx(specfun::beta(m, n)).epsilon(10 * tol));
  }
}

}
