#include "oplab/schur.hpp"

#include <algorithm>
#include <cmath>

#include "oplab/errors.hpp"
#include "oplab/hilbert.hpp"
#include "oplab/quad.hpp"
#include "oplab/specfun.hpp"

namespace oplab::schur {
namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return std::to_string(v);
}

struct Window {
  double t = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
  bool feasible() const { return s_lo < s_hi; }
};

// Interval of s admissible for a given d: the intersection of the two
// positivity windows that make both test integrals finite.
Window window_for(double d, double head, double width, const OperatorParams& prm, double a) {
  const double t = (head + d) / (head + width);
  const double ba = prm.beta - a;
  Window w;
  w.t = t;
  w.s_lo = std::max(-ba * (1.0 - t), -prm.alpha * t - d);
  w.s_hi = std::min(head + ba * t, width + prm.alpha * (1.0 - t) - d);
  return w;
}

// sup_u u^A (1+u)^-B for 0 < A < B, attained at u = A / (B - A).
double power_sup(double A, double B) {
  if (A == 0.0) return 1.0;
  return std::exp(A * std::log(A) + (B - A) * std::log(B - A) - B * std::log(B));
}

}  // namespace

SchurCertificate find_certificate(const CertificateInput& in, std::optional<double> forced_d) {
  const auto& prm = in.params;
  if (!(in.p >= 1.0) || !std::isfinite(in.q)) {
    throw DomainError("certificates need 1 <= p <= q < inf");
  }
  const ConditionReport verdict = hilbert::hilbert_verdict(in.p, in.q, in.a, in.b, prm);
  if (!verdict.bounded) {
    throw PreconditionError("certificate needs a tuple accepted by the boundedness criterion (" +
                            verdict.clause + ")");
  }

  const double pc = conjugate(in.p);
  const bool limit = std::isinf(pc);
  const double head = limit ? 0.0 : (in.a + 1.0) / pc;
  const double width = (in.b + 1.0) / in.q;

  SchurCertificate c;
  c.omega = prm.alpha + prm.beta - prm.gamma - in.a;
  c.limit_case = limit;

  std::optional<double> chosen;
  Window win;
  if (forced_d) {
    const double d = *forced_d;
    if (!(d > 0.0 && d < width)) {
      throw InfeasibleError("forced d = " + num(d) + " lies outside (0, (b+1)/q) = (0, " +
                            num(width) + ")");
    }
    win = window_for(d, head, width, prm, in.a);
    if (!win.feasible()) throw InfeasibleError("forced d = " + num(d) + " admits no s");
    chosen = d;
  } else {
    // One refinement pass on a 16x finer grid if the coarse grid misses.
    for (int n : {kDGridPoints, 16 * kDGridPoints}) {
      for (int k = 1; k <= n && !chosen; ++k) {
        const double d = width * k / (n + 1);
        const Window w = window_for(d, head, width, prm, in.a);
        if (w.feasible()) {
          chosen = d;
          win = w;
        }
      }
      if (chosen) break;
    }
    if (!chosen) throw InfeasibleError("no feasible d on the search grid");
  }

  c.d = *chosen;
  c.t = win.t;
  c.s = 0.5 * (win.s_lo + win.s_hi);
  c.r = c.s + c.d;

  const double ba = prm.beta - in.a;
  const double q = in.q;
  c.second_constant = specfun::beta(-c.r * q + prm.alpha * (1.0 - c.t) * q + in.b + 1.0,
                                    ba * (1.0 - c.t) * q + c.s * q);
  c.M2 = std::pow(c.second_constant, 1.0 / q);
  if (limit) {
    c.first_constant = power_sup(ba * c.t - c.s, prm.gamma * c.t);
    c.M1 = c.first_constant;
  } else {
    c.first_constant = specfun::beta(-c.s * pc + ba * c.t * pc + in.a + 1.0,
                                     prm.alpha * c.t * pc + c.r * pc);
    c.M1 = std::pow(c.first_constant, 1.0 / pc);
  }
  c.bound = c.M1 * c.M2;
  return c;
}

VerificationReport verify_certificate(const SchurCertificate& cert, const CertificateInput& in,
                                      std::size_t n_samples, double tol) {
  VerificationReport rep;
  rep.samples = n_samples;
  const auto& prm = in.params;
  const double pc = conjugate(in.p);
  const bool limit = std::isinf(pc);
  if (cert.t <= 0.0) {
    rep.degenerate = true;
    rep.degenerate_reason = "t <= 0: the first test function carries no kernel";
    return rep;
  }
  if (!limit && cert.t >= 1.0) {
    rep.degenerate = true;
    rep.degenerate_reason = "t >= 1 with p > 1: the second test integral loses its kernel";
    return rep;
  }

  const double ba = prm.beta - in.a;
  const double q = in.q;
  const double quad_tol = std::min(1e-10, tol * 1e-2);
  const double second_target = std::pow(cert.M2, q);

  for (std::size_t i = 0; i < n_samples; ++i) {
    const double frac = n_samples == 1 ? 0.5 : static_cast<double>(i) / (n_samples - 1);
    const double x = std::exp(std::log(1e-4) + frac * (std::log(1e4) - std::log(1e-4)));

    // First condition: integral (or sup) over y of K(x,y)^(t p') h1(y)^p' y^a.
    double first = 0.0;
    double first_target = 0.0;
    if (limit) {
      const double A = ba * cert.t - cert.s;
      const double B = prm.gamma * cert.t;
      Func1D row;
      row.eval = [&](double y) {
        return std::exp(prm.alpha * cert.t * std::log(x) + A * std::log(y) - B * std::log(x + y));
      };
      row.hints.breakpoints = {x};
      first = hilbert::essential_sup(row, {x * 1e-8, x * 1e8, 40, 200});
      first_target = cert.M1 * std::exp(-cert.r * std::log(x));
    } else {
      const double kp = cert.t * pc;
      quad::SingularityHints h;
      h.breakpoints = {x};
      h.left_exponent = ba * kp - cert.s * pc + in.a;
      h.decay_exponent = prm.gamma * kp - h.left_exponent;
      auto integrand = [&](double y) {
        return std::exp(prm.alpha * kp * std::log(x) + h.left_exponent * std::log(y) -
                        prm.gamma * kp * std::log(x + y));
      };
      first = quad::integrate_semiaxis(integrand, h, quad_tol);
      first_target = std::pow(cert.M1, pc) * std::exp(-cert.r * pc * std::log(x));
    }
    const double res1 = std::fabs(first / first_target - 1.0);
    rep.max_residual_first = std::max(rep.max_residual_first, res1);
    if (!(res1 <= tol)) {
      throw CertificateError("first test condition fails at sample " + std::to_string(i) +
                                 " (x = " + num(x) + "): relative residual " + num(res1),
                             "first", i, x, res1);
    }

    // Second condition: integral over x of K(x,y)^((1-t) q) h2(x)^q x^b at y.
    const double y = x;
    const double kq = (1.0 - cert.t) * q;
    quad::SingularityHints h;
    h.breakpoints = {y};
    h.left_exponent = prm.alpha * kq - cert.r * q + in.b;
    h.decay_exponent = prm.gamma * kq - h.left_exponent;
    auto integrand = [&](double u) {
      return std::exp(ba * kq * std::log(y) + h.left_exponent * std::log(u) -
                      prm.gamma * kq * std::log(u + y));
    };
    const double second = quad::integrate_semiaxis(integrand, h, quad_tol);
    const double res2 =
        std::fabs(second / (second_target * std::exp(-cert.s * q * std::log(y))) - 1.0);
    rep.max_residual_second = std::max(rep.max_residual_second, res2);
    if (!(res2 <= tol)) {
      throw CertificateError("second test condition fails at sample " + std::to_string(i) +
                                 " (y = " + num(y) + "): relative residual " + num(res2),
                             "second", i, y, res2);
    }
  }
  rep.passed = true;
  return rep;
}

namespace {

SupTestReport profile(std::span<const double> grid, const std::function<double(double)>& value) {
  SupTestReport rep;
  rep.grid.assign(grid.begin(), grid.end());
  for (double g : grid) rep.values.push_back(value(g));
  if (!rep.values.empty()) {
    rep.sup = *std::max_element(rep.values.begin(), rep.values.end());
    rep.min = *std::min_element(rep.values.begin(), rep.values.end());
    rep.spread = rep.sup / rep.min - 1.0;
  }
  return rep;
}

}  // namespace

SupTestReport sup_test_L1(const OperatorParams& params, double a, std::span<const double> y_grid,
                          double tol) {
  const auto& [alpha, beta, gamma] = params;
  quad::SingularityHints h;
  h.left_exponent = alpha + a;
  h.decay_exponent = gamma - alpha - a;
  auto column = [&](double y) {
    h.breakpoints = {y};
    auto integrand = [&](double x) {
      return std::exp((beta - a) * std::log(y) + (alpha + a) * std::log(x) -
                      gamma * std::log(x + y));
    };
    return quad::integrate_semiaxis(integrand, h, tol);
  };
  SupTestReport rep = profile(y_grid, column);
  rep.preconditions_hold = std::fabs(gamma - (alpha + beta + 1.0)) <= kRelationTolerance &&
                           -alpha < a + 1.0 && a + 1.0 < beta + 1.0;
  if (rep.preconditions_hold) rep.expected = specfun::beta(beta - a, alpha + a + 1.0);
  return rep;
}

SupTestReport sup_test_Linf(const OperatorParams& params, std::span<const double> x_grid,
                            double tol) {
  const auto& [alpha, beta, gamma] = params;
  quad::SingularityHints h;
  h.left_exponent = beta;
  h.decay_exponent = gamma - beta;
  auto row = [&](double x) {
    h.breakpoints = {x};
    auto integrand = [&](double y) {
      return std::exp(alpha * std::log(x) + beta * std::log(y) - gamma * std::log(x + y));
    };
    return quad::integrate_semiaxis(integrand, h, tol);
  };
  SupTestReport rep = profile(x_grid, row);
  rep.preconditions_hold =
      std::fabs(gamma - (alpha + beta + 1.0)) <= kRelationTolerance && alpha > 0.0 && beta > -1.0;
  if (rep.preconditions_hold) rep.expected = specfun::beta(beta + 1.0, alpha);
  return rep;
}

}  // namespace oplab::schur
