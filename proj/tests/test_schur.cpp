#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "corpus.hpp"
#include "oplab/errors.hpp"
#include "oplab/hilbert.hpp"
#include "oplab/schur.hpp"

using namespace oplab;
using schur::CertificateInput;

namespace {

constexpr double kPi = std::numbers::pi;

double beta_oracle(double m, double n) {
  return std::exp(std::lgamma(m) + std::lgamma(n) - std::lgamma(m + n));
}

CertificateInput random_accepted(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double p = 1.0 + 1e-3 + 3.0 * u(rng);
    const double q = p + 3.0 * u(rng);
    const double a = -0.9 + 2.5 * u(rng);
    const double b = -0.9 + 2.5 * u(rng);
    const double alpha = -1.0 + 3.0 * u(rng);
    const double beta = -0.9 + 3.0 * u(rng);
    const double gamma = alpha + beta + 1.0 - (a + 1.0) / p + (b + 1.0) / q;
    const CertificateInput in{p, q, a, b, {alpha, beta, gamma}};
    if (hilbert::hilbert_verdict(p, q, a, b, in.params).bounded) return in;
  }
}

// Every structural condition on a certificate, recomputed from the input.
void check_invariants(const schur::SchurCertificate& c, const CertificateInput& in) {
  const auto& [alpha, beta, gamma] = in.params;
  const double pc = in.p / (in.p - 1.0);
  CHECK(c.omega == doctest::Approx(alpha + beta - gamma - in.a));
  CHECK(c.omega < 0.0);
  CHECK(c.d == doctest::Approx(c.r - c.s));
  CHECK(c.d > 0.0);
  CHECK(c.d < (in.b + 1.0) / in.q);
  CHECK(c.t == doctest::Approx((-(in.a + 1.0) / pc - c.d) / c.omega));
  CHECK(c.t > 0.0);
  CHECK(c.t < 1.0);
  CHECK(-(beta - in.a) * (1.0 - c.t) < c.s);
  CHECK(c.s < (in.a + 1.0) / pc + (beta - in.a) * c.t);
  CHECK(-alpha * c.t < c.r);
  CHECK(c.r < (in.b + 1.0) / in.q + alpha * (1.0 - c.t));
  const double m1 = std::pow(beta_oracle(-c.s * pc + (beta - in.a) * c.t * pc + in.a + 1.0,
                                         alpha * c.t * pc + c.r * pc),
                             1.0 / pc);
  const double m2 = std::pow(beta_oracle(-c.r * in.q + alpha * (1.0 - c.t) * in.q + in.b + 1.0,
                                         (beta - in.a) * (1.0 - c.t) * in.q + c.s * in.q),
                             1.0 / in.q);
  CHECK(c.M1 == doctest::Approx(m1).epsilon(1e-12));
  CHECK(c.M2 == doctest::Approx(m2).epsilon(1e-12));
  CHECK(c.bound == doctest::Approx(c.M1 * c.M2).epsilon(1e-15));
}

}  // namespace

TEST_SUITE("schur") {

TEST_CASE("classical Hilbert certificate at d = 1/4") {
  const CertificateInput in{2, 2, 0, 0, {0, 0, 1}};
  const auto c = schur::find_certificate(in, 0.25);
  CHECK(c.t == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(c.s == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(c.r == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(c.bound == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-12));
  CHECK(c.bound == doctest::Approx(std::sqrt(beta_oracle(0.75, 0.75) * beta_oracle(0.25, 0.25)))
                       .epsilon(1e-12));
  CHECK(c.bound >= kPi);
  CHECK_FALSE(c.limit_case);
  check_invariants(c, in);

  const auto rep = schur::verify_certificate(c, in, 100, 1e-8);
  CHECK(rep.passed);
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.samples == 100);
  CHECK(rep.max_residual_first <= 1e-8);
  CHECK(rep.max_residual_second <= 1e-8);
}

TEST_CASE("default selection is the smallest feasible grid point") {
  const CertificateInput in{2, 2, 0, 0, {0, 0, 1}};
  const auto c = schur::find_certificate(in);
  CHECK(c.d == doctest::Approx(0.5 / (schur::kDGridPoints + 1)).epsilon(1e-12));
  CHECK(c.bound >= kPi - 1e-12);
  check_invariants(c, in);
}

TEST_CASE("limit case p = 1") {
  const CertificateInput in{1, 2, 0, 0, {0.25, 0.5, 1.25}};
  const auto c = schur::find_certificate(in);
  CHECK(c.limit_case);
  CHECK(std::isfinite(c.bound));
  CHECK(c.bound > 0.0);
  CHECK(schur::verify_certificate(c, in, 20, 1e-8).passed);
}

TEST_CASE("rejected inputs") {
  CHECK_THROWS_AS(schur::find_certificate({2, 2, 0, 0, {0, 0, 2}}), PreconditionError);
  CHECK_THROWS_AS(schur::find_certificate({2, 2, 0, 0, {0, 0, 1}}, 0.6), InfeasibleError);
  CHECK_THROWS_AS(schur::find_certificate({3, 2, 0, 0, {0, 0, 1}}), DomainError);
}

TEST_CASE("tampered certificates") {
  const CertificateInput in{2, 2, 0, 0, {0, 0, 1}};
  const auto good = schur::find_certificate(in, 0.25);

  auto bad_s = good;
  bad_s.s = 0.6;  // above the (a+1)/p' + (beta-a)t = 0.5 ceiling
  CHECK_THROWS_AS(schur::verify_certificate(bad_s, in, 10, 1e-8), DivergenceError);

  auto flat = good;
  flat.t = 1.0;
  const auto rep = schur::verify_certificate(flat, in, 10, 1e-8);
  CHECK(rep.degenerate);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.degenerate_reason.empty());

  auto low = good;
  low.M1 *= 0.5;
  try {
    schur::verify_certificate(low, in, 10, 1e-8);
    FAIL("expected CertificateError");
  } catch (const CertificateError& e) {
    CHECK(e.residual() > 1e-8);
    CHECK_FALSE(e.inequality().empty());
  }
}

TEST_CASE("L1 sup test") {
  const std::vector<double> grid = {0.1, 1.0, 10.0};
  const auto r = schur::sup_test_L1({0, 1, 2}, 0, grid);
  CHECK(r.preconditions_hold);
  REQUIRE(r.expected.has_value());
  CHECK(*r.expected == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.sup == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.spread <= 1e-8);

  const auto half = schur::sup_test_L1({0.5, 0.5, 2}, 0, grid);
  CHECK(half.sup == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(half.spread <= 1e-8);

  CHECK_THROWS_AS(schur::sup_test_L1({0, 0, 1}, 0, grid), DivergenceError);
}

TEST_CASE("L-infinity sup test") {
  const std::vector<double> grid = {0.1, 1.0, 10.0};
  const auto r = schur::sup_test_Linf({1, 0, 2}, grid);
  CHECK(r.sup == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.spread <= 1e-8);
  const auto pi = schur::sup_test_Linf({0.5, -0.5, 1}, grid);
  CHECK(pi.sup == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(pi.spread <= 1e-8);
  CHECK_THROWS_AS(schur::sup_test_Linf({0, 0, 1}, grid), DivergenceError);
}

TEST_CASE("property: completeness and invariants on random accepted tuples") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto in = random_accepted(rng);
    const auto c = schur::find_certificate(in);
    check_invariants(c, in);
  }
}

TEST_CASE("property: soundness on the corpus") {
  std::mt19937_64 rng(22);
  const auto corpus = testing::corpus_1d();
  const double tol = 1e-8;
  for (int i = 0; i < 10; ++i) {
    const auto in = random_accepted(rng);
    const auto c = schur::find_certificate(in);
    REQUIRE(schur::verify_certificate(c, in, 50, tol).passed);
    for (const auto& f : corpus) {
      const double hf = hilbert::weighted_lp_norm(hilbert::image(in.params, f, 1e-11), {in.q, in.b}, 1e-9);
      const double nf = hilbert::weighted_lp_norm(f, {in.p, in.a});
      CAPTURE(f.label);
      CHECK(hf <= (c.bound + 10 * tol) * nf);
    }
  }
}

TEST_CASE("property: bound dominates the sharp norm on the diagonal") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 200) {
    const double p = 1.05 + 4.0 * u(rng);
    const double a = -0.9 + 2.0 * u(rng);
    const OperatorParams prm{-1.0 + 2.0 * u(rng), -0.9 + 2.0 * u(rng), 0.0};
    const OperatorParams diag{prm.alpha, prm.beta, prm.alpha + prm.beta + 1.0};
    if (!hilbert::hilbert_verdict(p, p, a, a, diag).bounded) continue;
    ++checked;
    const double sharp = hilbert::sharp_norm({p, a}, diag);
    const auto c = schur::find_certificate({p, p, a, a, diag});
    REQUIRE(c.bound >= sharp - 1e-12);
  }
}

}
