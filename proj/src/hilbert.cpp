#include "oplab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oplab/errors.hpp"
#include "oplab/specfun.hpp"

namespace oplab::hilbert {
namespace {

// Inner integrals of nested quadratures run this much tighter than the outer.
constexpr double kInnerFraction = 0.05;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::string s = std::to_string(v);
  return s;
}

void require_positive_point(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be a positive finite point, got " + num(x));
  }
}

void require_space(double p, double a, const char* pname, const char* aname) {
  if (!(p >= 1.0)) throw DomainError(std::string(pname) + " must be >= 1, got " + num(p));
  if (std::isfinite(p) && !(a > -1.0)) {
    throw DomainError(std::string(aname) + " must be > -1, got " + num(a));
  }
}

// Breakpoints of f plus the finite ends of its support: the scales at which
// anything built from f changes behaviour.
std::vector<double> feature_points(const quad::SingularityHints& h) {
  std::vector<double> pts;
  for (double b : h.breakpoints) {
    if (b > 0.0 && std::isfinite(b)) pts.push_back(b);
  }
  if (h.support_lo > 0.0 && std::isfinite(h.support_lo)) pts.push_back(h.support_lo);
  if (h.support_hi > 0.0 && std::isfinite(h.support_hi)) pts.push_back(h.support_hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double power(double x, double e) { return e == 0.0 ? 1.0 : std::exp(e * std::log(x)); }

}  // namespace

double apply_H(const OperatorParams& params, const Func1D& f, double x, double tol) {
  require_positive_point(x, "x");
  const auto& h = f.hints;
  // y = x s puts the kernel transition at s = 1 for every x.
  quad::SingularityHints s;
  for (double b : h.breakpoints) s.breakpoints.push_back(b / x);
  s.support_lo = h.support_lo / x;
  s.support_hi = h.support_hi / x;
  s.left_exponent = h.left_exponent + params.beta;
  s.decay_exponent = h.decay_exponent - params.beta + params.gamma;
  const double beta = params.beta;
  const double gamma = params.gamma;
  auto integrand = [&](double t) {
    const double v = f.eval(x * t);
    if (v == 0.0) return 0.0;
    return v * std::exp(beta * std::log(t) - gamma * std::log1p(t));
  };
  const double integral = quad::integrate_semiaxis(integrand, s, tol);
  if (integral == 0.0) return 0.0;
  return power(x, params.alpha + params.beta + 1.0 - params.gamma) * integral;
}

double apply_H_adjoint(const OperatorParams& params, double a, double b, const Func1D& f,
                       double y, double tol) {
  // H* is H with weights y^(beta-a) and x^(alpha+b).
  return apply_H({params.beta - a, params.alpha + b, params.gamma}, f, y, tol);
}

Func1D image(const OperatorParams& params, const Func1D& f, double tol) {
  const auto& h = f.hints;
  Func1D out;
  out.label = "H[" + f.label + "]";
  out.hints.breakpoints = feature_points(h);
  if (!(h.support_hi > h.support_lo)) {
    out.eval = [](double) { return 0.0; };
    out.hints.support_hi = 0.0;
    return out;
  }
  // Near 0 the y-integral either converges (H f ~ x^alpha) or is dominated
  // by y ~ x; near inf it either converges (H f ~ x^(alpha-gamma)) or is
  // dominated by y ~ x.
  const double near_zero =
      params.alpha + std::min(0.0, h.left_exponent + params.beta + 1.0 - params.gamma);
  const double near_inf =
      params.alpha - params.gamma + std::max(0.0, params.beta + 1.0 - h.decay_exponent);
  out.hints.left_exponent = near_zero;
  out.hints.decay_exponent = -near_inf;
  out.eval = [params, f, tol](double x) { return apply_H(params, f, x, tol); };
  return out;
}

Func1D adjoint_image(const OperatorParams& params, double a, double b, const Func1D& f,
                     double tol) {
  Func1D out = image({params.beta - a, params.alpha + b, params.gamma}, f, tol);
  out.label = "H*[" + f.label + "]";
  return out;
}

Func1D dilate(const Func1D& f, double R) {
  require_positive_point(R, "dilation factor R");
  Func1D out;
  out.label = f.label + " dilated by " + num(R);
  out.hints = f.hints;
  for (double& b : out.hints.breakpoints) b /= R;
  out.hints.support_lo = f.hints.support_lo / R;
  out.hints.support_hi = f.hints.support_hi / R;
  out.eval = [f, R](double x) { return f.eval(R * x); };
  return out;
}

double essential_sup(const Func1D& f, const SupSearch& search) {
  std::vector<double> ts;
  const double t_lo = std::log(search.lo);
  const double t_hi = std::log(search.hi);
  const int n = std::max(2, static_cast<int>(std::ceil((t_hi - t_lo) / std::log(10.0) *
                                                       search.points_per_decade)) + 1);
  for (int i = 0; i < n; ++i) ts.push_back(t_lo + (t_hi - t_lo) * i / (n - 1));
  const auto features = feature_points(f.hints);
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double t = std::log(features[i]);
    ts.push_back(t - 1e-9);
    ts.push_back(t + 1e-9);
    if (i + 1 < features.size()) ts.push_back(0.5 * (t + std::log(features[i + 1])));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  auto value = [&](double t) { return std::fabs(f.eval(std::exp(t))); };
  std::vector<double> vals(ts.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    vals[i] = value(ts[i]);
    if (vals[i] > vals[best]) best = i;
  }
  double result = vals[best];

  // Golden-section search between the neighbours of the best grid point.
  double lo = ts[best == 0 ? 0 : best - 1];
  double hi = ts[std::min(best + 1, ts.size() - 1)];
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = value(c);
  double fd = value(d);
  for (int i = 0; i < search.refine_steps && hi - lo > 1e-14; ++i) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = value(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = value(d);
    }
    result = std::max({result, fc, fd});
  }
  return result;
}

namespace {

quad::SingularityHints powered_hints(const quad::SingularityHints& h, double p, double a) {
  quad::SingularityHints out = h;
  out.left_exponent = p * h.left_exponent + a;
  out.decay_exponent = p * h.decay_exponent - a;
  return out;
}

double lp_integral(const Func1D& f, const WeightedSpace& space, double cutoff, double tol) {
  const double p = space.p;
  const double a = space.a;
  auto integrand = [&](double x) {
    const double v = f.eval(x);
    if (v == 0.0) return 0.0;
    return std::exp(p * std::log(std::fabs(v)) + a * std::log(x));
  };
  const auto hints = powered_hints(f.hints, p, a);
  // Relative accuracy tol on the norm needs tol*p on the integral.
  const double itol = tol * std::max(1.0, p) * 0.5;
  if (std::isinf(cutoff)) return quad::integrate_semiaxis(integrand, hints, itol);
  return quad::integrate_truncated(integrand, hints, cutoff, itol);
}

}  // namespace

double weighted_lp_norm(const Func1D& f, const WeightedSpace& space, double tol) {
  require_space(space.p, space.a, "p", "a");
  if (std::isinf(space.p)) return essential_sup(f);
  return std::pow(lp_integral(f, space, kInfinity, tol), 1.0 / space.p);
}

double truncated_lp_norm(const Func1D& f, const WeightedSpace& space, double cutoff, double tol) {
  require_space(space.p, space.a, "p", "a");
  if (std::isinf(space.p)) return essential_sup(f);
  return std::pow(lp_integral(f, space, cutoff, tol), 1.0 / space.p);
}

double pairing(const Func1D& u, const Func1D& v, double w, double tol) {
  quad::SingularityHints h;
  h.breakpoints = feature_points(u.hints);
  const auto more = feature_points(v.hints);
  h.breakpoints.insert(h.breakpoints.end(), more.begin(), more.end());
  h.support_lo = std::max(u.hints.support_lo, v.hints.support_lo);
  h.support_hi = std::min(u.hints.support_hi, v.hints.support_hi);
  h.left_exponent = u.hints.left_exponent + v.hints.left_exponent + w;
  h.decay_exponent = u.hints.decay_exponent + v.hints.decay_exponent - w;
  auto integrand = [&](double x) {
    const double fu = u.eval(x);
    if (fu == 0.0) return 0.0;
    const double fv = v.eval(x);
    if (fv == 0.0) return 0.0;
    return fu * fv * power(x, w);
  };
  return quad::integrate_semiaxis(integrand, h, tol);
}

double balanced_gamma(double p, double q, double a, double b, double alpha, double beta) {
  return alpha + beta + 1.0 - weight_ratio(a, p) + weight_ratio(b, q);
}

bool direct_form_holds(double p, double a, const OperatorParams& params) {
  return -p * (params.gamma - params.beta - 1.0) < a + 1.0 && a + 1.0 < p * (params.beta + 1.0);
}

bool adjoint_form_holds(double q, double b, const OperatorParams& params) {
  return -q * params.alpha < b + 1.0 && b + 1.0 < q * (params.gamma - params.alpha);
}

ConditionReport hilbert_verdict(double p, double q, double a, double b,
                                const OperatorParams& params) {
  require_space(p, a, "p", "a");
  require_space(q, b, "q", "b");
  if (p > q) throw DomainError("unsupported regime: p = " + num(p) + " > q = " + num(q));
  const auto& [alpha, beta, gamma] = params;
  ConditionReport r;

  if (std::isfinite(q)) {
    r.regime = "L^p_a -> L^q_b, 1 <= p <= q < inf";
    set_relation(r, "gamma = alpha+beta+1-(a+1)/p+(b+1)/q", gamma,
                 balanced_gamma(p, q, a, b, alpha, beta));
    conclude(r, {strictly_less("-p(gamma-beta-1) < a+1", -p * (gamma - beta - 1.0), a + 1.0),
                 strictly_less("a+1 < p(beta+1)", a + 1.0, p * (beta + 1.0))});
    r.cross_checks = {strictly_less("-q alpha < b+1", -q * alpha, b + 1.0),
                      strictly_less("b+1 < q(gamma-alpha)", b + 1.0, q * (gamma - alpha))};
  } else if (std::isfinite(p)) {
    if (p == 1.0) throw DomainError("unsupported regime: L^1_a -> L^inf");
    r.regime = "L^p_a -> L^inf, 1 < p < inf";
    set_relation(r, "gamma = alpha+beta+1-(a+1)/p", gamma,
                 alpha + beta + 1.0 - weight_ratio(a, p));
    conclude(r, {strictly_less("0 < alpha", 0.0, alpha),
                 strictly_less("a+1 < p(beta+1)", a + 1.0, p * (beta + 1.0))});
    r.cross_checks = {
        strictly_less("-p(gamma-beta-1) < a+1", -p * (gamma - beta - 1.0), a + 1.0)};
  } else {
    r.regime = "L^inf -> L^inf";
    set_relation(r, "gamma = alpha+beta+1", gamma, alpha + beta + 1.0);
    conclude(r, {strictly_less("0 < alpha", 0.0, alpha),
                 strictly_less("-1 < beta", -1.0, beta)});
  }

  if (!r.relation_holds) {
    r.clause = "balance relation fails";
  } else if (!r.inequalities_hold) {
    for (const auto& i : r.inequalities) {
      if (!i.holds) {
        r.clause = "violated: " + i.text;
        break;
      }
    }
  } else {
    r.clause = "balance relation and strict inequalities hold";
  }
  return r;
}

double sharp_norm(const WeightedSpace& space, const OperatorParams& params) {
  const auto& [alpha, beta, gamma] = params;
  const double p = space.p;
  require_space(p, space.a, "p", "a");
  if (std::fabs(gamma - (alpha + beta + 1.0)) > kRelationTolerance) {
    throw PreconditionError("sharp norm needs gamma = alpha+beta+1; got gamma = " + num(gamma) +
                            ", alpha+beta+1 = " + num(alpha + beta + 1.0));
  }
  if (std::isinf(p)) {
    if (!(alpha > 0.0)) throw PreconditionError("sharp norm on L^inf needs alpha > 0");
    if (!(beta > -1.0)) throw PreconditionError("sharp norm on L^inf needs beta > -1");
    return specfun::beta(beta + 1.0, alpha);
  }
  const double a1 = space.a + 1.0;
  if (!(-p * alpha < a1)) {
    throw PreconditionError("sharp norm needs -p alpha < a+1; got " + num(-p * alpha) +
                            " >= " + num(a1));
  }
  if (!(a1 < p * (beta + 1.0))) {
    throw PreconditionError("sharp norm needs a+1 < p(beta+1); got " + num(a1) +
                            " >= " + num(p * (beta + 1.0)));
  }
  return specfun::beta(beta + 1.0 - a1 / p, alpha + a1 / p);
}

ExtremalResult extremal_quotient(const WeightedSpace& space, const OperatorParams& params,
                                 double xi, double tol) {
  const double p = space.p;
  const double a = space.a;
  if (std::isinf(p)) throw PreconditionError("extremal family needs finite p");
  if (!(xi > 0.0)) throw PreconditionError("extremal family needs xi > 0");
  ExtremalResult out;
  out.sharp = sharp_norm(space, params);

  const double pc = conjugate(p);
  const double f_decay = (a + 1.0 + xi) / p;
  const double g_decay = std::isinf(pc) ? 0.0 : (a + 1.0 + xi) / pc;
  auto truncated_power = [](double decay, const std::string& label) {
    Func1D fn;
    fn.label = label;
    fn.hints.breakpoints = {1.0};
    fn.hints.support_lo = 1.0;
    fn.hints.decay_exponent = decay;
    fn.eval = [decay](double x) { return x >= 1.0 ? std::exp(-decay * std::log(x)) : 0.0; };
    return fn;
  };
  const Func1D f = truncated_power(f_decay, "x^-" + num(f_decay) + " on [1,inf)");
  const Func1D g = truncated_power(g_decay, "x^-" + num(g_decay) + " on [1,inf)");

  out.f_norm = weighted_lp_norm(f, space, tol);
  out.g_norm = std::isinf(pc) ? essential_sup(g) : weighted_lp_norm(g, {pc, a}, tol);
  out.pairing = pairing(g, image(params, f, tol * kInnerFraction), a, tol);
  out.quotient = out.pairing / (out.f_norm * out.g_norm);

  const double beta = params.beta;
  out.lower_bound_valid = xi < p * (beta + 1.0) - (a + 1.0);
  if (out.lower_bound_valid) {
    const double c = 1.0 / ((beta + g_decay - a) * (beta + 1.0 - f_decay));
    out.lower_bound = specfun::beta(beta + 1.0 - f_decay, params.alpha + f_decay) - xi * c;
  } else {
    out.lower_bound = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double dilation_residual(const OperatorParams& params, const Func1D& f, double R,
                         std::span<const double> probes, double tol) {
  const Func1D fR = dilate(f, R);
  const double factor = std::pow(R, params.gamma - params.beta - params.alpha - 1.0);
  double worst = 0.0;
  for (double x : probes) {
    const double lhs = apply_H(params, fR, x, tol);
    const double at_Rx = apply_H(params, f, R * x, tol);
    worst = std::max(worst, std::fabs(lhs - factor * at_Rx) / (1.0 + std::fabs(at_Rx)));
  }
  return worst;
}

double duality_residual(const OperatorParams& params, double a, double b, const Func1D& f,
                        const Func1D& g, double tol) {
  const double inner = tol * kInnerFraction;
  const double lhs = pairing(image(params, f, inner), g, b, tol);
  const double rhs = pairing(f, adjoint_image(params, a, b, g, inner), a, tol);
  return std::fabs(lhs - rhs);
}

GrowthResult growth_exponent(double p, double q, double a, double b,
                             const OperatorParams& params, const Func1D& f,
                             std::span<const double> R_grid, double tol) {
  require_space(p, a, "p", "a");
  require_space(q, b, "q", "b");
  if (R_grid.size() < 2) throw DomainError("growth exponent needs at least two dilation factors");
  GrowthResult out;
  out.predicted = -(params.gamma - params.alpha - params.beta - 1.0 - weight_ratio(b, q) +
                    weight_ratio(a, p));
  for (double R : R_grid) {
    const Func1D fR = dilate(f, R);
    const double num_norm =
        truncated_lp_norm(image(params, fR, tol * kInnerFraction), {q, b}, kGrowthCutoff, tol);
    const double den_norm = weighted_lp_norm(fR, {p, a}, tol);
    out.R.push_back(R);
    out.log_ratio.push_back(std::log(num_norm / den_norm));
  }
  const double n = static_cast<double>(out.R.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < out.R.size(); ++i) {
    const double lx = std::log(out.R[i]);
    sx += lx;
    sy += out.log_ratio[i];
    sxx += lx * lx;
    sxy += lx * out.log_ratio[i];
  }
  out.slope_log_R = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.exponent = -out.slope_log_R;
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("geometric grid needs 0 < lo < hi, n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  g.back() = hi;
  return g;
}

}  // namespace oplab::hilbert
