// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Expected values come from closed forms evaluated here with
// std::tgamma / std::lgamma, independently of oplab::specfun.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "oplab/bergman.hpp"
#include "oplab/errors.hpp"
#include "oplab/funcdsl.hpp"
#include "oplab/hilbert.hpp"
#include "oplab/quad.hpp"
#include "oplab/schur.hpp"
#include "oplab/specfun.hpp"

using namespace oplab;

namespace {

constexpr double kPi = std::numbers::pi;

double beta_oracle(double m, double n) {
  return std::exp(std::lgamma(m) + std::lgamma(n) - std::lgamma(m + n));
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

// 1. Classical Hilbert constant and the extremal family near it.
void classical_hilbert(Outcome& out) {
  double worst_norm = 0.0;
  for (double p : {4.0 / 3.0, 2.0, 4.0}) {
    const double want = kPi / std::sin(kPi / p);
    const double got = hilbert::sharp_norm({p, 0.0}, {0.0, 0.0, 1.0});
    worst_norm = std::max(worst_norm, rel_err(got, want));
    const auto ext = hilbert::extremal_quotient({p, 0.0}, {0.0, 0.0, 1.0}, 1e-3);
    std::ostringstream s;
    s << "p=" << p << " extremal " << ext.quotient << " not in [" << want - 0.02 << ", "
      << want + 1e-6 << "]";
    out.require(ext.quotient >= want - 0.02 && ext.quotient <= want + 1e-6, s.str());
  }
  out.require(worst_norm <= 1e-12, "sharp norm rel err " + std::to_string(worst_norm));
  if (out.ok) out.detail << "max sharp-norm rel err " << worst_norm;
}

// 2. Beta against its integral representation.
void beta_oracle_check(Outcome& out) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double m = 10.0 - 9.9 * unit(rng);
    const double n = 10.0 - 9.9 * unit(rng);
    quad::SingularityHints h;
    h.left_exponent = m - 1.0;
    h.decay_exponent = n + 1.0;
    const double integral = quad::integrate_semiaxis(
        [m, n](double u) { return std::exp((m - 1.0) * std::log(u) - (m + n) * std::log1p(u)); }, h, 1e-11);
    worst = std::max(worst, rel_err(specfun::beta(m, n), integral));
  }
  out.require(worst <= 1e-9, "max rel err " + std::to_string(worst));
  if (out.ok) out.detail << "100 pairs, max rel err " << worst;
}

// 3. Kernel row integral, closed form against quadrature.
void kernel_row(Outcome& out) {
  double worst = 0.0;
  for (double alpha : {2.0, 3.0, 4.5}) {
    for (double y : {0.5, 1.0, 2.0}) {
      const double closed = bergman::kernel_row_integral(alpha, y);
      const double direct = bergman::kernel_row_quadrature(alpha, y);
      const double oracle = beta_oracle(0.5, (alpha - 1.0) / 2.0) * std::pow(y, 1.0 - alpha);
      worst = std::max({worst, rel_err(closed, direct), rel_err(closed, oracle)});
    }
  }
  out.require(worst <= 1e-8, "max rel err " + std::to_string(worst));
  if (out.ok) out.detail << "max rel err " << worst;
}

// 4. T+ applied to f = 1 is the constant L-infinity norm.
void tplus_linf(Outcome& out) {
  const Func2D one = funcdsl::parse("1").to_func2d();
  for (OperatorParams prm : {OperatorParams{1.0, 0.0, 2.0}, OperatorParams{0.5, -0.5, 1.0}}) {
    const double want = beta_oracle(0.5, prm.gamma / 2.0) * beta_oracle(prm.beta + 1.0, prm.alpha);
    double lo = kInfinity;
    double hi = 0.0;
    for (auto z : bergman::default_probes()) {
      const double v = bergman::apply_Tplus(prm, one, z);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    std::ostringstream s;
    s << "(" << prm.alpha << "," << prm.beta << "," << prm.gamma << ") range [" << lo << ", "
      << hi << "] want " << want;
    out.require(hi / lo - 1.0 <= 1e-4, s.str() + " not constant");
    out.require(rel_err(hi, want) <= 5e-3 && rel_err(lo, want) <= 5e-3, s.str());
    if (out.ok) out.detail << s.str() << "; ";
  }
}

// 5. Column integrals give the L^1_a norm.
void tplus_l1(Outcome& out) {
  const OperatorParams prm{0.0, 1.0, 2.0};
  const double a = 0.0;
  const double want = beta_oracle(0.5, prm.gamma / 2.0) * beta_oracle(prm.beta - a, prm.alpha + a + 1.0);
  double sup = 0.0;
  for (auto w : bergman::default_probes()) sup = std::max(sup, bergman::column_integral(prm, a, w));
  std::ostringstream s;
  s << "sup " << sup << " want " << want;
  out.require(rel_err(sup, want) <= 5e-3, s.str());
  if (out.ok) out.detail << s.str();
}

// 6. P_0 reproduces (i/(z+i))^3.
void reproduction(Outcome& out) {
  using cd = std::complex<double>;
  const cd i(0.0, 1.0);
  ComplexFunc2D f;
  f.eval = [i](double x, double y) { return std::pow(i / (cd(x, y) + i), 3); };
  f.x_hints.decay_exponent = 3.0;
  f.y_hints.decay_exponent = 3.0;
  double worst = 0.0;
  for (auto z : {bergman::HalfPlanePoint{0.0, 1.0}, {1.0, 1.0}, {-1.0, 0.5}, {0.5, 2.0},
                 {2.0, 0.3}}) {
    const cd got = bergman::bergman_project(0.0, f, z, 1e-7);
    worst = std::max(worst, std::abs(got - std::pow(i / (cd(z.x, z.y) + i), 3)));
  }
  out.require(worst <= 1e-4, "max abs err " + std::to_string(worst));
  if (out.ok) out.detail << "5 points, max abs err " << worst;
}

// 7. Growth exponents of |H f_R| / |f_R| when the balance relation fails.
void growth(Outcome& out) {
  const Func1D bump = funcdsl::parse("ind(1,2)").to_func1d();
  const auto grid = hilbert::geometric_grid(1e-2, 1e2, 9);
  for (double gamma : {0.5, 2.0, 1.0}) {
    const auto r = hilbert::growth_exponent(2.0, 2.0, 0.0, 0.0, {0.0, 0.0, gamma}, bump, grid);
    const double e = -(gamma - 0.0 - 0.0 - 1.0 - 0.5 + 0.5);
    std::ostringstream s;
    s << "gamma=" << gamma << " slope " << r.exponent << " predicted " << e;
    if (e == 0.0) {
      out.require(std::abs(r.exponent) <= 0.02, s.str());
    } else {
      out.require(std::abs(r.exponent - e) <= 0.02 * std::abs(e), s.str());
    }
    if (out.ok) out.detail << s.str() << "; ";
  }
}

// 8. Schur certificates on random accepted tuples.
void certificates(Outcome& out) {
  const auto corpus = testing::corpus_1d();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int accepted = 0;
  int failures = 0;
  double worst_ratio = 0.0;
  std::string first_failure;
  while (accepted < 1000) {
    const double p = 1.0 + 1e-3 + 3.0 * unit(rng);
    const double q = p + 3.0 * unit(rng);
    const double a = -0.9 + 2.5 * unit(rng);
    const double b = -0.9 + 2.5 * unit(rng);
    const double alpha = -1.0 + 3.0 * unit(rng);
    const double beta = -0.9 + 3.0 * unit(rng);
    const double gamma = alpha + beta + 1.0 - (a + 1.0) / p + (b + 1.0) / q;
    const OperatorParams prm{alpha, beta, gamma};
    if (!hilbert::hilbert_verdict(p, q, a, b, prm).bounded) continue;
    ++accepted;
    const schur::CertificateInput in{p, q, a, b, prm};
    try {
      const auto cert = schur::find_certificate(in);
      const auto rep = schur::verify_certificate(cert, in, 100, 1e-8);
      if (!rep.passed) throw Error("verification did not pass");
      for (const auto& f : corpus) {
        const double hf = hilbert::weighted_lp_norm(hilbert::image(prm, f, 1e-11), {q, b}, 1e-9);
        const double nf = hilbert::weighted_lp_norm(f, {p, a}, 1e-10);
        const double ratio = hf / (cert.bound * nf);
        worst_ratio = std::max(worst_ratio, ratio);
        if (ratio > 1.0 + 1e-6) throw Error("norm bound exceeded, ratio " + std::to_string(ratio));
      }
    } catch (const Error& e) {
      if (failures++ == 0) {
        std::ostringstream s;
        s << "tuple p=" << p << " q=" << q << " a=" << a << " b=" << b << " alpha=" << alpha
          << " beta=" << beta << ": " << e.what();
        first_failure = s.str();
      }
    }
  }
  out.require(failures == 0, std::to_string(failures) + " failing tuples, first: " + first_failure);

  const auto classical = schur::find_certificate({2.0, 2.0, 0.0, 0.0, {0.0, 0.0, 1.0}}, 0.25);
  const double two_sqrt_pi = 2.0 * std::sqrt(kPi);
  out.require(rel_err(classical.bound, two_sqrt_pi) <= 1e-10,
              "classical bound " + std::to_string(classical.bound));
  if (out.ok) {
    out.detail << "1000 tuples x 20 functions, max |Hf|/(bound |f|) " << worst_ratio
               << ", classical bound rel err " << rel_err(classical.bound, two_sqrt_pi);
  }
}

// 9. Property suites: condition equivalence, dilation, duality, mixed-norm scaling.
void properties(Outcome& out) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const double p = 1.0 + 4.0 * unit(rng);
    const double q = p + 4.0 * unit(rng);
    const double a = -1.0 + 3.0 * unit(rng);
    const double b = -1.0 + 3.0 * unit(rng);
    const double alpha = -2.0 + 4.0 * unit(rng);
    const double beta = -2.0 + 4.0 * unit(rng);
    const double gamma = alpha + beta + 1.0 - (a + 1.0) / p + (b + 1.0) / q;
    const OperatorParams prm{alpha, beta, gamma};
    const bool direct = -p * (gamma - beta - 1.0) < a + 1.0 && a + 1.0 < p * (beta + 1.0);
    const bool adjoint = -q * alpha < b + 1.0 && b + 1.0 < q * (gamma - alpha);
    if (direct != adjoint || direct != hilbert::direct_form_holds(p, a, prm) ||
        adjoint != hilbert::adjoint_form_holds(q, b, prm)) {
      ++mismatches;
    }
  }
  out.require(mismatches == 0, std::to_string(mismatches) + " equivalence counterexamples");

  const auto corpus = testing::corpus_1d();
  const std::vector<double> probes = {0.5, 1.0, 3.0};
  double worst_dilation = 0.0;
  for (const auto& f : corpus) {
    for (OperatorParams prm : {OperatorParams{0.0, 0.0, 1.0}, OperatorParams{0.5, 0.25, 1.5}}) {
      for (double R : {0.5, 2.0, 3.0}) {
        worst_dilation = std::max(worst_dilation, hilbert::dilation_residual(prm, f, R, probes, 1e-10));
      }
    }
  }
  out.require(worst_dilation <= 1e-8, "dilation residual " + std::to_string(worst_dilation));

  double worst_duality = 0.0;
  for (std::size_t k = 0; k + 1 < corpus.size(); ++k) {
    worst_duality = std::max(
        worst_duality, hilbert::duality_residual({0.0, 0.0, 1.0}, 0.0, 0.0, corpus[k], corpus[k + 1]));
  }
  out.require(worst_duality <= 1e-8, "duality residual " + std::to_string(worst_duality));

  double worst_mixed = 0.0;
  for (const auto& f : testing::corpus_2d()) {
    for (MixedNormSpace s : {MixedNormSpace{2.0, 2.0, 0.0}, MixedNormSpace{1.0, 2.0, 0.5},
                             MixedNormSpace{2.0, 3.0, 1.0}}) {
      const double base = bergman::mixed_norm(f, s);
      for (double R : {0.5, 2.0}) {
        const double scaled = bergman::mixed_norm(bergman::dilate(f, R), s);
        const double want = std::pow(R, -(s.nu + 1.0) / s.q - 1.0 / s.p) * base;
        worst_mixed = std::max(worst_mixed, rel_err(scaled, want));
      }
    }
  }
  out.require(worst_mixed <= 1e-6, "mixed-norm dilation rel err " + std::to_string(worst_mixed));
  if (out.ok) {
    out.detail << "10000 tuples, 0 counterexamples; dilation " << worst_dilation << ", duality "
               << worst_duality << ", mixed-norm " << worst_mixed;
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "classical Hilbert norm and extremal quotient", 60.0, classical_hilbert},
      {2, "Beta against integrate_semiaxis", 30.0, beta_oracle_check},
      {3, "kernel row integral", 10.0, kernel_row},
      {4, "T+ L-infinity norm", 120.0, tplus_linf},
      {5, "T+ L^1_a norm", 120.0, tplus_l1},
      {6, "Bergman reproduction", 120.0, reproduction},
      {7, "divergence exponents", 60.0, growth},
      {8, "certificate suite", 600.0, certificates},
      {9, "property suites", 600.0, properties},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs <= c.budget_seconds, "over time budget");
    if (!out.ok) ++failed;
    std::printf("%s criterion %d (%s) [%.2fs]: %s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
