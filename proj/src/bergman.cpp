#include "oplab/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "oplab/errors.hpp"
#include "oplab/hilbert.hpp"
#include "oplab/specfun.hpp"

namespace oplab::bergman {
namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return std::to_string(v);
}

void require_point(HalfPlanePoint z) {
  if (!(z.y > 0.0) || !std::isfinite(z.y) || !std::isfinite(z.x)) {
    throw DomainError("half-plane point needs finite x and y > 0, got (" + num(z.x) + ", " +
                      num(z.y) + ")");
  }
}

double power(double x, double e) { return e == 0.0 ? 1.0 : std::exp(e * std::log(x)); }

bool bounded_x_support(const quad::LineHints& h) {
  return std::isfinite(h.support_lo) && std::isfinite(h.support_hi);
}

// Decay in y of the slice norm |f(., y)|_p. Without a bounded x-support the
// slices may widen linearly in y, which costs 1/p of the pointwise decay.
double slice_decay(const Func2D& f, double p) {
  const double tau = f.y_hints.decay_exponent;
  if (bounded_x_support(f.x_hints) || std::isinf(p)) return tau;
  return tau - 1.0 / p;
}

// Coordinates for the kernel integral
//   integral f(x + y s_u, y s_v) s_v^weight |zeta|^-kernel ds_u ds_v,
// zeta = -s_u + i(1 + s_v), with inner abscissa t and u = centre + unit * t.
// A bounded x-support is integrated in u itself. Otherwise the line is
// centred on the kernel (t = s_u), and when z is far from the origin the
// half nearer the origin gets its own u-frame so the profile of f stays
// resolvable.
struct KernelFrame {
  HalfPlanePoint z;
  bool centred = false;
  quad::HalfPlaneHints hints;

  double u(double t) const { return centred ? z.x + z.y * t : t; }
  double su(double t) const { return centred ? t : (t - z.x) / z.y; }
  double jacobian() const { return centred ? 1.0 : 1.0 / z.y; }
};

void set_v_hints(KernelFrame& k, const quad::SingularityHints& fy, double weight, double kernel,
                 bool bounded) {
  auto& h = k.hints;
  for (double b : fy.breakpoints) h.v.breakpoints.push_back(b / k.z.y);
  h.v.support_lo = fy.support_lo / k.z.y;
  h.v.support_hi = fy.support_hi / k.z.y;
  h.v.left_exponent = fy.left_exponent + weight;
  // The u-integral of the kernel over a widening profile loses one power;
  // a bounded x-support gives it back.
  h.v.decay_exponent = fy.decay_exponent - weight + kernel - 1.0 + (bounded ? 1.0 : 0.0);
}

std::vector<KernelFrame> kernel_frames(const quad::LineHints& fx, const quad::SingularityHints& fy,
                                       HalfPlanePoint z, double weight, double kernel) {
  std::vector<KernelFrame> frames;
  if (bounded_x_support(fx)) {
    KernelFrame k{z, false, {}};
    auto& h = k.hints;
    h.u.breakpoints = fx.breakpoints;
    h.u.breakpoints.push_back(z.x);
    h.u.support_lo = fx.support_lo;
    h.u.support_hi = fx.support_hi;
    h.u_scale = [y = z.y](double sv) { return y * (1.0 + sv); };
    set_v_hints(k, fy, weight, kernel, true);
    frames.push_back(std::move(k));
    return frames;
  }

  const bool split = std::fabs(z.x) > 4.0 * (1.0 + z.y);
  const double mid = 0.5 * z.x;
  double lo = fx.support_lo;
  double hi = fx.support_hi;
  if (split) {
    KernelFrame o{z, false, {}};
    auto& h = o.hints;
    h.u.breakpoints = fx.breakpoints;
    for (double b : {-1.0, 0.0, 1.0}) h.u.breakpoints.push_back(b);
    h.u.support_lo = z.x > 0.0 ? lo : std::max(lo, mid);
    h.u.support_hi = z.x > 0.0 ? std::min(hi, mid) : hi;
    h.u.decay_exponent = fx.decay_exponent + kernel;
    h.u_scale = [y = z.y](double sv) { return 1.0 + y * sv; };
    set_v_hints(o, fy, weight, kernel, false);
    if (h.u.support_hi > h.u.support_lo) frames.push_back(std::move(o));
    if (z.x > 0.0) lo = std::max(lo, mid);
    else hi = std::min(hi, mid);
  }

  KernelFrame k{z, true, {}};
  auto& h = k.hints;
  for (double b : fx.breakpoints) h.u.breakpoints.push_back((b - z.x) / z.y);
  h.u.support_lo = (lo - z.x) / z.y;
  h.u.support_hi = (hi - z.x) / z.y;
  h.u.decay_exponent = fx.decay_exponent + kernel;
  h.u_scale = [](double sv) { return 1.0 + sv; };
  set_v_hints(k, fy, weight, kernel, false);
  if (h.u.support_hi > h.u.support_lo) frames.push_back(std::move(k));
  return frames;
}

// zeta^-k on the principal branch, zeta = -s_u + i(1 + s_v).
std::complex<double> zeta_power(double su, double sv, double k) {
  const double im = 1.0 + sv;
  const double log_mod = 0.5 * std::log(su * su + im * im);
  const double arg = std::atan2(im, -su);
  return std::polar(std::exp(-k * log_mod), -k * arg);
}

double line_sup(const Func2D& f, double y) {
  hilbert::SupSearch search;
  double best = std::fabs(f.eval(0.0, y));
  for (double sign : {1.0, -1.0}) {
    Func1D half;
    half.eval = [&f, y, sign](double s) { return f.eval(sign * s, y); };
    for (double b : f.x_hints.breakpoints) {
      if (sign * b > 0.0) half.hints.breakpoints.push_back(sign * b);
    }
    best = std::max(best, hilbert::essential_sup(half, search));
  }
  return best;
}

std::string violated_clause(const ConditionReport& r) {
  if (!r.relation_holds) return "balance relation fails";
  for (const auto& i : r.inequalities) {
    if (!i.holds) return "violated: " + i.text;
  }
  return "balance relation and strict inequalities hold";
}

const char* selector_name(Selector s) {
  switch (s) {
    case Selector::TPlus:
      return "T+";
    case Selector::T:
      return "T";
    case Selector::Projection:
      return "P_beta";
  }
  return "?";
}

}  // namespace

double kernel_row_integral(double alpha, double y) {
  if (!(y > 0.0)) throw DomainError("kernel row integral needs y > 0, got " + num(y));
  if (!(alpha > 1.0)) {
    throw DivergenceError("integral of |x+iy|^-alpha over R diverges for alpha = " + num(alpha) +
                              " <= 1",
                          DivergenceError::Endpoint::Infinity);
  }
  return specfun::beta(0.5, 0.5 * (alpha - 1.0)) * power(y, 1.0 - alpha);
}

double kernel_row_quadrature(double alpha, double y, double tol) {
  if (!(y > 0.0)) throw DomainError("kernel row integral needs y > 0, got " + num(y));
  quad::LineHints h;
  h.decay_exponent = alpha;
  h.scale = y;
  const double y2 = y * y;
  return quad::integrate_line(
      [&](double x) { return std::exp(-0.5 * alpha * std::log(x * x + y2)); }, h, tol);
}

double slice_norm(const Func2D& f, double p, double y, double tol) {
  if (!(p >= 1.0)) throw DomainError("slice norm needs p >= 1, got " + num(p));
  if (std::isinf(p)) return line_sup(f, y);
  quad::LineHints h = f.x_hints;
  h.decay_exponent = f.x_hints.decay_exponent * p;
  quad::Options opts;
  opts.abs_tol = 0.0;
  const double integral = quad::integrate_line(
      [&](double x) {
        const double v = std::fabs(f.eval(x, y));
        return v == 0.0 ? 0.0 : std::pow(v, p);
      },
      h, tol, opts);
  return std::pow(integral, 1.0 / p);
}

double mixed_norm(const Func2D& f, const MixedNormSpace& space, double tol) {
  const auto& [p, q, nu] = space;
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw DomainError("mixed norm needs p, q >= 1, got p = " + num(p) + ", q = " + num(q));
  }
  const double inner_tol = tol * 0.05;
  Func1D slice;
  slice.eval = [&f, p, inner_tol](double y) { return slice_norm(f, p, y, inner_tol); };
  slice.hints = f.y_hints;
  slice.hints.decay_exponent = slice_decay(f, p);
  if (std::isinf(q)) return hilbert::essential_sup(slice);

  if (!(nu > -1.0)) throw DomainError("mixed norm needs nu > -1, got " + num(nu));
  quad::SingularityHints h = f.y_hints;
  h.left_exponent = q * f.y_hints.left_exponent + nu;
  h.decay_exponent = q * slice.hints.decay_exponent - nu;
  const double integral = quad::integrate_semiaxis(
      [&](double y) {
        const double n = slice.eval(y);
        return n == 0.0 ? 0.0 : std::exp(q * std::log(n) + nu * std::log(y));
      },
      h, tol);
  return std::pow(integral, 1.0 / q);
}

Func2D dilate(const Func2D& f, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw DomainError("dilation factor must be positive and finite, got " + num(R));
  }
  Func2D out;
  out.label = f.label + " dilated by " + num(R);
  out.x_hints = f.x_hints;
  for (double& b : out.x_hints.breakpoints) b /= R;
  out.x_hints.support_lo /= R;
  out.x_hints.support_hi /= R;
  out.x_hints.scale /= R;
  out.y_hints = f.y_hints;
  for (double& b : out.y_hints.breakpoints) b /= R;
  out.y_hints.support_lo /= R;
  out.y_hints.support_hi /= R;
  out.eval = [f, R](double x, double y) { return f.eval(R * x, R * y); };
  return out;
}

double apply_Tplus(const OperatorParams& params, const Func2D& f, HalfPlanePoint z, double tol) {
  require_point(z);
  const auto& [alpha, beta, gamma] = params;
  const double k = 0.5 * (1.0 + gamma);
  quad::Options opts;
  opts.relative_to_abs = true;
  double integral = 0.0;
  for (const auto& frame : kernel_frames(f.x_hints, f.y_hints, z, beta, 1.0 + gamma)) {
    const double jac = frame.jacobian();
    auto integrand = [&](double t, double sv) {
      const double v = f.eval(frame.u(t), z.y * sv);
      if (v == 0.0) return 0.0;
      const double su = frame.su(t);
      const double im = 1.0 + sv;
      return jac * v * std::exp(beta * std::log(sv) - k * std::log(su * su + im * im));
    };
    integral += quad::integrate_halfplane(integrand, frame.hints, tol, opts);
  }
  if (integral == 0.0) return 0.0;
  return power(z.y, alpha + beta + 1.0 - gamma) * integral;
}

std::complex<double> apply_T(const OperatorParams& params, const Func2D& f, HalfPlanePoint z,
                             double tol) {
  require_point(z);
  const auto& [alpha, beta, gamma] = params;
  std::complex<double> integral = 0.0;
  for (const auto& frame : kernel_frames(f.x_hints, f.y_hints, z, beta, 1.0 + gamma)) {
    const double jac = frame.jacobian();
    auto integrand = [&](double t, double sv) -> std::complex<double> {
      const double v = f.eval(frame.u(t), z.y * sv);
      if (v == 0.0) return 0.0;
      return jac * v * power(sv, beta) * zeta_power(frame.su(t), sv, 1.0 + gamma);
    };
    integral += quad::integrate_halfplane_complex(integrand, frame.hints, tol);
  }
  // arg(y zeta) = arg(zeta), so the principal power factorises.
  return power(z.y, alpha + beta + 1.0 - gamma) * integral;
}

std::complex<double> bergman_constant(double nu) {
  if (!(nu > -1.0)) throw DomainError("Bergman constant needs nu > -1, got " + num(nu));
  return std::polar(std::exp2(nu) / std::numbers::pi * (nu + 1.0),
                    (2.0 + nu) * std::numbers::pi / 2.0);
}

std::complex<double> bergman_project(double nu, const ComplexFunc2D& f, HalfPlanePoint z,
                                     double tol) {
  require_point(z);
  const std::complex<double> c = bergman_constant(nu);
  std::complex<double> integral = 0.0;
  for (const auto& frame : kernel_frames(f.x_hints, f.y_hints, z, nu, 2.0 + nu)) {
    const double jac = frame.jacobian();
    auto integrand = [&](double t, double sv) -> std::complex<double> {
      const std::complex<double> v = f.eval(frame.u(t), z.y * sv);
      if (v == 0.0) return 0.0;
      return jac * v * power(sv, nu) * zeta_power(frame.su(t), sv, 2.0 + nu);
    };
    integral += quad::integrate_halfplane_complex(integrand, frame.hints, tol);
  }
  // The powers of y cancel: y^-(2+nu) from the kernel, y^nu y^2 from the measure.
  return c * integral;
}

std::complex<double> bergman_project(double nu, const Func2D& f, HalfPlanePoint z, double tol) {
  ComplexFunc2D g;
  g.eval = [&f](double x, double y) { return std::complex<double>(f.eval(x, y), 0.0); };
  g.x_hints = f.x_hints;
  g.y_hints = f.y_hints;
  g.label = f.label;
  return bergman_project(nu, g, z, tol);
}

ReductionReport reduction_bound_check(const OperatorParams& params, const Func2D& f, double p,
                                      std::span<const double> y_grid, double tol) {
  const auto& [alpha, beta, gamma] = params;
  if (!(gamma > 0.0)) throw DomainError("reduction bound needs gamma > 0, got " + num(gamma));
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("reduction bound needs 1 <= p < inf");

  Func1D slices;
  const double slice_tol = tol * 0.005;
  slices.eval = [&f, p, slice_tol](double v) { return slice_norm(f, p, v, slice_tol); };
  slices.hints = f.y_hints;
  slices.hints.decay_exponent = slice_decay(f, p);
  const double c_gamma = specfun::beta(0.5, 0.5 * gamma);

  ReductionReport rep;
  rep.holds = true;
  for (double y : y_grid) {
    require_point({0.0, y});
    quad::LineHints h;
    h.breakpoints = f.x_hints.breakpoints;
    h.scale = y;
    const double image_decay = bounded_x_support(f.x_hints)
                                   ? 1.0 + gamma
                                   : std::min(f.x_hints.decay_exponent, 1.0 + gamma);
    h.decay_exponent = p * image_decay;
    const double inner_tol = tol * 0.05;
    const double integral = quad::integrate_line(
        [&](double x) {
          const double v = std::fabs(apply_Tplus(params, f, {x, y}, inner_tol));
          return v == 0.0 ? 0.0 : std::pow(v, p);
        },
        h, tol);

    ReductionRow row;
    row.y = y;
    row.lhs = std::pow(integral, 1.0 / p);
    row.rhs = c_gamma * hilbert::apply_H(params, slices, y, tol * 0.1);
    row.slack = row.rhs - row.lhs;
    row.holds = row.lhs <= row.rhs + tol * std::max(1.0, row.rhs);
    rep.holds = rep.holds && row.holds;
    rep.rows.push_back(row);
  }
  return rep;
}

ConditionReport bergman_verdict(const BergmanVerdictRequest& req) {
  const auto& src = req.source;
  const auto& dst = req.target;
  OperatorParams prm = req.params;
  if (req.op == Selector::Projection) {
    if (!(prm.beta > -1.0)) {
      throw DomainError("projection P_beta needs beta > -1, got " + num(prm.beta));
    }
    prm.alpha = 0.0;
    prm.gamma = prm.beta + 1.0;
  }
  const auto& [alpha, beta, gamma] = prm;
  const double p = src.p;
  const double q = src.q;
  const double r = dst.q;
  const double a = src.nu;
  const double b = dst.nu;
  const std::string name = selector_name(req.op);
  auto unsupported = [&](const std::string& why) {
    return DomainError("unsupported regime for " + name + ": " + why);
  };

  if (!(p >= 1.0) || !(q >= 1.0) || !(r >= 1.0)) throw unsupported("exponents must be >= 1");
  if (dst.p != p) throw unsupported("source and target need the same p");
  if (std::isfinite(q) && !(a > -1.0)) throw unsupported("source weight must be > -1");
  if (std::isfinite(r) && !(b > -1.0)) throw unsupported("target weight must be > -1");

  ConditionReport rep;
  if (std::isinf(p)) {
    if (!std::isinf(q) || !std::isinf(r)) throw unsupported("p = inf needs q = r = inf");
    rep.regime = name + " on L^inf";
    set_relation(rep, "gamma = alpha+beta+1", gamma, alpha + beta + 1.0);
    conclude(rep, {strictly_less("0 < alpha", 0.0, alpha),
                   strictly_less("-1 < beta", -1.0, beta)});
  } else if (p == 1.0) {
    if (q != 1.0 || r != 1.0) throw unsupported("p = 1 needs q = r = 1");
    if (a != b) throw unsupported("L^1_a needs equal source and target weights");
    rep.regime = name + " on L^1_a";
    set_relation(rep, "gamma = alpha+beta+1", gamma, alpha + beta + 1.0);
    conclude(rep, {strictly_less("-alpha < a+1", -alpha, a + 1.0),
                   strictly_less("a+1 < beta+1", a + 1.0, beta + 1.0)});
  } else if (q == 1.0) {
    if (a != 0.0) throw unsupported("source L^{p,1} is unweighted; got a = " + num(a));
    if (r == 1.0) {
      if (b != 0.0) throw unsupported("target L^{p,1} is unweighted; got b = " + num(b));
      rep.regime = name + " on L^{p,1}";
      set_relation(rep, "gamma = alpha+beta+1", gamma, alpha + beta + 1.0);
      conclude(rep, {strictly_less("-1 < alpha", -1.0, alpha),
                     strictly_less("0 < beta", 0.0, beta)});
    } else if (std::isfinite(r)) {
      rep.regime = name + " : L^{p,1} -> L^{p,r}_b, 1 < r < inf";
      set_relation(rep, "gamma = alpha+beta+(b+1)/r", gamma, alpha + beta + (b + 1.0) / r);
      conclude(rep, {strictly_less("beta < gamma", beta, gamma),
                     strictly_less("0 < beta", 0.0, beta)});
    } else {
      rep.regime = name + " : L^{p,1} -> L^{p,inf}";
      set_relation(rep, "gamma = alpha+beta", gamma, alpha + beta);
      conclude(rep, {strictly_less("0 < alpha", 0.0, alpha),
                     strictly_less("0 < beta", 0.0, beta)});
    }
  } else if (std::isinf(q)) {
    if (!std::isinf(r)) throw unsupported("source q = inf needs target r = inf");
    rep.regime = name + " on L^{p,inf}";
    set_relation(rep, "gamma = alpha+beta+1", gamma, alpha + beta + 1.0);
    conclude(rep, {strictly_less("0 < alpha", 0.0, alpha),
                   strictly_less("-1 < beta", -1.0, beta)});
  } else if (std::isinf(r)) {
    rep.regime = name + " : L^{p,q}_a -> L^{p,inf}, 1 < q < inf";
    set_relation(rep, "gamma = alpha+beta+1-(a+1)/q", gamma, alpha + beta + 1.0 - (a + 1.0) / q);
    conclude(rep, {strictly_less("0 < alpha", 0.0, alpha),
                   strictly_less("a+1 < q(beta+1)", a + 1.0, q * (beta + 1.0))});
    rep.cross_checks = {
        strictly_less("-q(gamma-beta-1) < a+1", -q * (gamma - beta - 1.0), a + 1.0)};
  } else {
    if (q > r) throw unsupported("needs q <= r, got q = " + num(q) + ", r = " + num(r));
    rep.regime = name + " : L^{p,q}_a -> L^{p,r}_b, 1 < q <= r < inf";
    set_relation(rep, "gamma = alpha+beta+1-(a+1)/q+(b+1)/r", gamma,
                 alpha + beta + 1.0 - (a + 1.0) / q + (b + 1.0) / r);
    conclude(rep, {strictly_less("-q(gamma-beta-1) < a+1", -q * (gamma - beta - 1.0), a + 1.0),
                   strictly_less("a+1 < q(beta+1)", a + 1.0, q * (beta + 1.0))});
  }
  if (req.op == Selector::Projection) {
    rep.regime += " with alpha = 0, gamma = beta+1";
  }
  rep.clause = violated_clause(rep);
  return rep;
}

double tplus_exact_norm(NormCase which, const OperatorParams& params, double a) {
  const auto& [alpha, beta, gamma] = params;
  if (std::fabs(gamma - (alpha + beta + 1.0)) > kRelationTolerance) {
    throw PreconditionError("exact norm needs gamma = alpha+beta+1; got gamma = " + num(gamma) +
                            ", alpha+beta+1 = " + num(alpha + beta + 1.0));
  }
  const double c_gamma = specfun::beta(0.5, 0.5 * gamma);
  if (which == NormCase::Linf) {
    if (!(alpha > 0.0)) throw PreconditionError("exact norm on L^inf needs alpha > 0");
    if (!(beta > -1.0)) throw PreconditionError("exact norm on L^inf needs beta > -1");
    return c_gamma * specfun::beta(beta + 1.0, alpha);
  }
  if (!(a > -1.0)) throw PreconditionError("exact norm on L^1_a needs a > -1");
  if (!(-alpha < a + 1.0)) throw PreconditionError("exact norm on L^1_a needs -alpha < a+1");
  if (!(a + 1.0 < beta + 1.0)) throw PreconditionError("exact norm on L^1_a needs a+1 < beta+1");
  return c_gamma * specfun::beta(beta - a, alpha + a + 1.0);
}

double column_integral(const OperatorParams& params, double a, HalfPlanePoint w, double tol) {
  require_point(w);
  const auto& [alpha, beta, gamma] = params;
  // Integrated in the original (x, y) coordinates around the pole at conj(w).
  quad::HalfPlaneHints h;
  h.u.breakpoints = {w.x};
  h.u.decay_exponent = 1.0 + gamma;
  h.u_scale = [v = w.y](double y) { return y + v; };
  h.v.breakpoints = {w.y};
  h.v.left_exponent = alpha + a;
  h.v.decay_exponent = gamma - alpha - a;
  const double k = 0.5 * (1.0 + gamma);
  const double outer = power(w.y, beta - a);
  auto integrand = [&](double x, double y) {
    const double dx = x - w.x;
    const double dy = y + w.y;
    return std::exp((alpha + a) * std::log(y) - k * std::log(dx * dx + dy * dy));
  };
  return outer * quad::integrate_halfplane(integrand, h, tol);
}

std::vector<HalfPlanePoint> default_probes() {
  std::vector<HalfPlanePoint> out;
  for (double y : {0.5, 1.0, 2.0}) {
    for (double x : {-1.0, 0.0, 1.0}) out.push_back({x, y});
  }
  return out;
}

}  // namespace oplab::bergman
