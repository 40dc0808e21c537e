#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "corpus.hpp"
#include "oplab/bergman.hpp"
#include "oplab/errors.hpp"
#include "oplab/funcdsl.hpp"

using namespace oplab;
using bergman::HalfPlanePoint;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

Func2D F(std::string_view src) { return funcdsl::parse(src).to_func2d(); }

double beta_oracle(double m, double n) {
  return std::exp(std::lgamma(m) + std::lgamma(n) - std::lgamma(m + n));
}

ComplexFunc2D power_of_cayley(int m) {
  ComplexFunc2D f;
  f.eval = [m](double x, double y) { return std::pow(cd(0, 1) / (cd(x, y) + cd(0, 1)), m); };
  f.x_hints.decay_exponent = m;
  f.y_hints.decay_exponent = m;
  return f;
}

bergman::BergmanVerdictRequest request(bergman::Selector op, double p, double q, double r, double a,
                                       double b, OperatorParams prm) {
  bergman::BergmanVerdictRequest req;
  req.op = op;
  req.source = {p, q, a};
  req.target = {p, r, b};
  req.params = prm;
  return req;
}

// mpmath (40 digits) values of the box function
// ind(x,-1/4,1/4) ind(y,1,2) under T+ and T with (alpha, beta, gamma) = (0, 0, 1).
constexpr double kTplusBoxHalf = 0.132536097693648031;
constexpr double kTplusBoxI = 0.0830300081364596180;
constexpr double kTBoxI = -0.0824275253166404102;

const char* const kBox = "ind(x,-0.25,0.25)*ind(y,1,2)";

}  // namespace

TEST_SUITE("bergman") {

TEST_CASE("kernel row integral") {
  CHECK(bergman::kernel_row_integral(2, 1) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(bergman::kernel_row_integral(3, 1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(bergman::kernel_row_integral(3, 2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bergman::kernel_row_quadrature(4.5, 0.5) ==
        doctest::Approx(beta_oracle(0.5, 1.75) * std::pow(0.5, -3.5)).epsilon(1e-9));
  CHECK_THROWS_AS(bergman::kernel_row_integral(1.0, 1.0), DivergenceError);
  CHECK_THROWS_AS(bergman::kernel_row_integral(3.0, 0.0), DomainError);
}

TEST_CASE("mixed norms") {
  const auto box = F(kBox);
  CHECK(bergman::mixed_norm(box, {2, 2, 0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
  CHECK(bergman::mixed_norm(box, {2, kInfinity, 0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
  CHECK(bergman::mixed_norm(box, {1, 1, 1}) == doctest::Approx(0.5 * 1.5).epsilon(1e-8));
  CHECK(bergman::mixed_norm(bergman::dilate(box, 2.0), {2, 2, 0}) ==
        doctest::Approx(std::pow(2.0, -1.0) * std::sqrt(0.5)).epsilon(1e-8));

  // |((z+i)/i)^-2| = (x^2 + (y+1)^2)^-1; squared norm B(1/2,3/2) B(1,2) = pi/4.
  const auto g = F("(x^2+(y+1)^2)^(-1)");
  CHECK(std::pow(bergman::mixed_norm(g, {2, 2, 0}), 2) ==
        doctest::Approx(beta_oracle(0.5, 1.5) * beta_oracle(1, 2)).epsilon(1e-7));
  CHECK(beta_oracle(0.5, 1.5) * beta_oracle(1, 2) == doctest::Approx(kPi / 4).epsilon(1e-14));
}

TEST_CASE("slice norms") {
  const auto box = F(kBox);
  CHECK(bergman::slice_norm(box, 2, 1.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(bergman::slice_norm(box, 1, 1.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bergman::slice_norm(box, kInfinity, 1.5) == 1.0);
  CHECK(bergman::slice_norm(box, 2, 3.0) == 0.0);
}

TEST_CASE("T+ on the constant function") {
  const auto one = F("1");
  for (auto z : bergman::default_probes()) {
    CHECK(bergman::apply_Tplus({1, 0, 2}, one, z) == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(bergman::apply_Tplus({0.5, -0.5, 1}, one, z) == doctest::Approx(kPi * kPi).epsilon(1e-5));
  }
  CHECK(bergman::apply_Tplus({0, 0, 1}, F("0"), {0, 1}) == 0.0);
  CHECK(bergman::apply_T({0, 0, 1}, F("0"), {0, 1}) == cd(0, 0));
}

TEST_CASE("T+ and T on the box against high-precision values") {
  const auto box = F(kBox);
  CHECK(bergman::apply_Tplus({0, 0, 1}, box, {0, 0.5}, 1e-9) ==
        doctest::Approx(kTplusBoxHalf).epsilon(1e-8));
  CHECK(bergman::apply_Tplus({0, 0, 1}, box, {0, 1}, 1e-9) ==
        doctest::Approx(kTplusBoxI).epsilon(1e-8));
  const cd t = bergman::apply_T({0, 0, 1}, box, {0, 1}, 1e-9);
  CHECK(std::abs(t - cd(kTBoxI, 0)) < 1e-9);
}

TEST_CASE("T+ on the box has the y^alpha / (1+y)^gamma lower-bound shape") {
  const auto box = F(kBox);
  const double c = bergman::apply_Tplus({0, 0, 1}, box, {0, 0.5}) * 1.5;
  CHECK(c > 0.0);
  for (double y : {0.1, 0.5, 1.0, 3.0}) {
    const double v = bergman::apply_Tplus({0, 0, 1}, box, {0, y});
    CHECK(v >= 0.25 * c / (1.0 + y));
  }
  // Far from the support the kernel decays like y^-2 against a box of mass 1/2.
  const double y = 1e3;
  CHECK(y * y * bergman::apply_Tplus({0, 0, 1}, box, {0, y}) == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("T+ divergence from the kernel hints") {
  CHECK_THROWS_AS(bergman::apply_Tplus({0, 0, 0.5}, F("1"), {0, 1}), DivergenceError);
}

TEST_CASE("reproducing constant") {
  const cd c0 = bergman::bergman_constant(0.0);
  CHECK(std::abs(c0) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(std::abs(c0 - cd(-1.0 / kPi, 0.0)) < 1e-16);
  CHECK(std::abs(bergman::bergman_constant(1.0)) == doctest::Approx(4.0 / kPi).epsilon(1e-15));
}

TEST_CASE("projection reproduces powers of i/(z+i)") {
  const auto f3 = power_of_cayley(3);
  const cd at_i = bergman::bergman_project(0.0, f3, {0, 1}, 1e-8);
  CHECK(std::abs(at_i - cd(0.125, 0)) < 1e-7);
  for (int m : {3, 4}) {
    const auto f = power_of_cayley(m);
    for (double nu : {0.0, 0.5, 1.0}) {
      for (auto z : {HalfPlanePoint{0, 1}, {1, 1}, {-1, 0.5}, {0.5, 2}, {2, 0.3}}) {
        const cd got = bergman::bergman_project(nu, f, z, 1e-7);
        CHECK(std::abs(got - f.eval(z.x, z.y)) < 1e-4);
      }
    }
  }
}

TEST_CASE("projection of a nonnegative function is dominated by T+") {
  const auto box = F(kBox);
  const double tplus = bergman::apply_Tplus({0, 0, 1}, box, {0, 1}, 1e-8);
  const cd p = bergman::bergman_project(0.0, box, {0, 1}, 1e-8);
  CHECK(std::abs(p) <= tplus / kPi + 1e-8);
}

TEST_CASE("reduction inequality") {
  const std::vector<double> ys = {0.5, 1.0, 2.0};
  const auto rep = bergman::reduction_bound_check({0, 0, 1}, F(kBox), 2.0, ys);
  CHECK(rep.holds);
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    CHECK(row.holds);
    CHECK(row.slack > 0.0);
    CHECK(row.lhs < row.rhs);
  }
  const auto zero = bergman::reduction_bound_check({0, 0, 1}, F("0"), 2.0, ys);
  CHECK(zero.holds);
  for (const auto& row : zero.rows) {
    CHECK(row.lhs == 0.0);
    CHECK(row.rhs == 0.0);
  }
}

TEST_CASE("verdicts") {
  using bergman::Selector;
  const auto off = bergman::bergman_verdict(request(Selector::TPlus, 2, 2, 2, 0, 0, {0.25, 0.25, 1}));
  CHECK_FALSE(off.bounded);
  CHECK(off.relation_residual == doctest::Approx(-0.5));
  const auto on = bergman::bergman_verdict(request(Selector::TPlus, 2, 2, 2, 0, 0, {0.25, 0.25, 1.5}));
  CHECK(on.bounded);

  const auto proj = bergman::bergman_verdict(request(Selector::Projection, 2, 1, 1, 0, 0, {0, 0.5, 0}));
  CHECK(proj.bounded);
  CHECK(proj.regime.find("alpha = 0, gamma = beta+1") != std::string::npos);
  CHECK_FALSE(
      bergman::bergman_verdict(request(Selector::Projection, 2, 1, 1, 0, 0, {0, -0.5, 0})).bounded);

  const auto sup = bergman::bergman_verdict(
      request(Selector::TPlus, 2, kInfinity, kInfinity, 0, 0, {0.5, -0.5, 1}));
  CHECK(sup.bounded);
  CHECK_FALSE(bergman::bergman_verdict(
                  request(Selector::TPlus, 2, kInfinity, kInfinity, 0, 0, {0, 0, 1}))
                  .bounded);

  const auto l1 = bergman::bergman_verdict(request(Selector::TPlus, 1, 1, 1, 0, 0, {0, 1, 2}));
  CHECK(l1.bounded);

  const auto t = bergman::bergman_verdict(request(Selector::T, 2, 2, 2, 0, 0, {0.25, 0.25, 1.5}));
  CHECK(t.bounded);
}

TEST_CASE("verdict arithmetic is self-consistent") {
  const auto r = bergman::bergman_verdict(
      request(bergman::Selector::TPlus, 2, 2, 3, 0.5, 0.2, {0.3, 0.4, 1.2}));
  for (const auto& i : r.inequalities) CHECK(i.holds == (i.lhs < i.rhs));
  CHECK(r.relation_residual == doctest::Approx(1.2 - r.relation_rhs).epsilon(1e-15));
  CHECK(r.bounded == (r.relation_holds && r.inequalities_hold));
}

TEST_CASE("unsupported regimes") {
  using bergman::Selector;
  CHECK_THROWS_AS(bergman::bergman_verdict(request(Selector::TPlus, 2, 3, 2, 0, 0, {0, 0, 1})),
                  DomainError);
  auto mismatch = request(Selector::TPlus, 2, 2, 2, 0, 0, {0, 0, 1});
  mismatch.target.p = 3;
  CHECK_THROWS_AS(bergman::bergman_verdict(mismatch), DomainError);
  CHECK_THROWS_AS(bergman::bergman_verdict(request(Selector::TPlus, 2, 1, 2, 0.5, 0, {0, 0, 1})),
                  DomainError);
  CHECK_THROWS_AS(bergman::bergman_verdict(request(Selector::TPlus, 2, 2, 2, -1.5, 0, {0, 0, 1})),
                  DomainError);
}

TEST_CASE("exact T+ norms") {
  using bergman::NormCase;
  CHECK(bergman::tplus_exact_norm(NormCase::Linf, {1, 0, 2}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(bergman::tplus_exact_norm(NormCase::Linf, {0.5, -0.5, 1}) ==
        doctest::Approx(kPi * kPi).epsilon(1e-14));
  CHECK(bergman::tplus_exact_norm(NormCase::L1, {0, 1, 2}, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(bergman::tplus_exact_norm(NormCase::Linf, {0, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(bergman::tplus_exact_norm(NormCase::L1, {0, 0, 1}, 0), PreconditionError);
}

TEST_CASE("column integrals are constant and equal the L1 norm") {
  const double want = bergman::tplus_exact_norm(bergman::NormCase::L1, {0, 1, 2}, 0);
  for (auto w : bergman::default_probes()) {
    CHECK(bergman::column_integral({0, 1, 2}, 0, w) == doctest::Approx(want).epsilon(1e-5));
  }
  const double want_a = beta_oracle(0.5, 1.0) * beta_oracle(0.5, 1.5);
  CHECK(bergman::column_integral({0, 1, 2}, 0.5, {0.3, 0.7}) == doctest::Approx(want_a).epsilon(1e-5));
}

TEST_CASE("property: |T f| is dominated by T+ |f|") {
  const auto box = F(kBox);
  const double tol = 1e-6;
  for (double x : {-1.0, 0.0, 0.7, 2.0, -3.0}) {
    for (double y : {0.5, 1.5}) {
      const HalfPlanePoint z{x, y};
      for (OperatorParams prm : {OperatorParams{0, 0, 1}, OperatorParams{0.5, 0.5, 2}}) {
        const double plus = bergman::apply_Tplus(prm, box, z, tol);
        const double mod = std::abs(bergman::apply_T(prm, box, z, tol));
        CHECK(mod <= plus * (1 + 10 * tol));
      }
    }
  }
}

TEST_CASE("property: mixed-norm dilation law on the corpus") {
  for (const auto& f : testing::corpus_2d()) {
    for (MixedNormSpace s : {MixedNormSpace{2, 2, 0}, MixedNormSpace{1, 3, 0.5}}) {
      const double base = bergman::mixed_norm(f, s);
      for (double R : {0.25, 3.0}) {
        CAPTURE(f.label);
        const double scaled = bergman::mixed_norm(bergman::dilate(f, R), s);
        CHECK(scaled == doctest::Approx(std::pow(R, -(s.nu + 1) / s.q - 1 / s.p) * base).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("property: reduction inequality on the corpus") {
  const std::vector<double> ys = {0.5, 2.0};
  for (const auto& f : testing::corpus_2d()) {
    const auto rep = bergman::reduction_bound_check({0, 0, 1}, f, 2.0, ys);
    CAPTURE(f.label);
    CHECK(rep.holds);
    for (const auto& row : rep.rows) CHECK(row.slack >= 0.0);
  }
}

}
