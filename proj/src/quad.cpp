#include "oplab/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "oplab/errors.hpp"

namespace oplab::quad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLn10 = 2.302585092994045684017991454684364;
// exp() stays finite and normal inside this window.
constexpr double kMaxLogArg = 700.0;

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208745609420, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod abscissae.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

// One integrand value with the modulus its error is measured against. They
// differ when folded or iterated integrands cancel internally.
struct Sample {
  double value;
  double magnitude;
};

struct Result {
  double value;
  double magnitude;
};

using SampleFn = std::function<Sample(double)>;

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  double absval;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Segment gauss_kronrod(const SampleFn& fn, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, 21> vals{};
  const Sample sc = fn(center);
  const double fc = sc.value;
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = sc.magnitude * kWgk[10];
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const Sample s1 = fn(center - dx);
    const Sample s2 = fn(center + dx);
    const double f1 = s1.value;
    const double f2 = s2.value;
    vals[2 * j] = f1;
    vals[2 * j + 1] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (s1.magnitude + s2.magnitude);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::fabs(vals[2 * j] - mean) + std::fabs(vals[2 * j + 1] - mean));
  }
  const double result = resk * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {lo, hi, result, err, resabs};
}

// Samples below DBL_MIN are flushed, so smaller errors are not resolvable.
constexpr double kFlushFloor = 1e6 * std::numeric_limits<double>::min();

// Adaptive bisection driven by the largest local error estimate.
Result adaptive(const SampleFn& fn, std::vector<double> knots, Result extra, double tol,
                const Options& opts) {
  auto by_error = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::vector<Segment> heap;
  heap.reserve(static_cast<std::size_t>(std::max(opts.max_segments, 1)) + knots.size());
  double total = 0.0;
  double error = 0.0;
  double absval = extra.magnitude;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    Segment s = gauss_kronrod(fn, knots[i], knots[i + 1]);
    total += s.value;
    error += s.error;
    absval += s.absval;
    heap.push_back(s);
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  auto target = [&] {
    const double scale = opts.relative_to_abs ? absval : std::fabs(total + extra.value);
    return std::max({tol * scale, opts.abs_tol, 100.0 * kEps * absval, kFlushFloor});
  };

  while (error > target()) {
    if (static_cast<int>(heap.size()) >= opts.max_segments) {
      const double scale = std::max(std::fabs(total + extra.value), std::numeric_limits<double>::min());
      throw AccuracyError("quadrature budget of " + std::to_string(opts.max_segments) +
                              " segments exhausted; estimated relative error " +
                              fmt(error / scale) + " > " + fmt(tol),
                          error / scale, tol);
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw AccuracyError("quadrature segment cannot be bisected further near t=" + fmt(mid),
                          error, tol);
    }
    const Segment left = gauss_kronrod(fn, worst.lo, mid);
    const Segment right = gauss_kronrod(fn, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    absval += left.absval + right.absval - worst.absval;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Resum to shed the drift of the running updates.
  std::sort(heap.begin(), heap.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  double sum = 0.0;
  for (const auto& s : heap) sum += s.value;
  return {sum + extra.value, absval};
}

void add_knot(std::vector<double>& knots, double t, double lo, double hi) {
  if (t > lo && t < hi) knots.push_back(t);
}

Result semiaxis(const SampleFn& f, const SingularityHints& hints, double tol,
                const Options& opts) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  const double sup_lo = std::max(hints.support_lo, 0.0);
  const double sup_hi = hints.support_hi;
  if (!(sup_hi > sup_lo)) return {0.0, 0.0};

  const bool open_left = sup_lo == 0.0;
  const bool open_right = std::isinf(sup_hi);
  const double sigma = hints.left_exponent;
  const double tau = hints.decay_exponent;
  if (open_left && !(sigma > -1.0)) {
    throw DivergenceError("integral diverges at 0: integrand behaves like y^" + fmt(sigma) +
                              " with exponent <= -1",
                          DivergenceError::Endpoint::Zero);
  }
  if (open_right && !(tau > 1.0)) {
    throw DivergenceError("integral diverges at infinity: integrand decays like y^-" +
                              fmt(tau) + " with exponent <= 1",
                          DivergenceError::Endpoint::Infinity);
  }

  // Core scales: where the integrand has structure.
  double core_lo = 0.0;
  double core_hi = 0.0;
  auto widen = [&](double y) {
    if (y > 0.0 && std::isfinite(y)) {
      core_lo = std::min(core_lo, std::log(y));
      core_hi = std::max(core_hi, std::log(y));
    }
  };
  for (double b : hints.breakpoints) {
    if (b > sup_lo && b < sup_hi) widen(b);
  }
  if (!open_left) widen(sup_lo);
  if (!open_right) widen(sup_hi);

  const double reach = opts.decades * kLn10;
  const double t_lo = open_left ? std::max(core_lo - reach, -kMaxLogArg) : std::log(sup_lo);
  const double t_hi = open_right ? std::min(core_hi + reach, kMaxLogArg) : std::log(sup_hi);
  if (!(t_hi > t_lo)) return {0.0, 0.0};

  const SampleFn transformed = [&f](double t) -> Sample {
    const double y = std::exp(t);
    const Sample s = f(y);
    if (s.magnitude == 0.0) return {0.0, 0.0};
    const Sample w{s.value * y, s.magnitude * y};
    if (!std::isfinite(w.value) || !std::isfinite(w.magnitude)) {
      throw AccuracyError("non-finite integrand value at y=" + fmt(y), kInf, 0.0);
    }
    return w;
  };

  std::vector<double> knots{t_lo, t_hi};
  for (double b : hints.breakpoints) {
    if (b > 0.0 && std::isfinite(b)) add_knot(knots, std::log(b), t_lo, t_hi);
  }
  add_knot(knots, 0.0, t_lo, t_hi);
  for (double step = 1.0; step <= 128.0; step *= 2.0) {
    add_knot(knots, core_lo - step, t_lo, t_hi);
    add_knot(knots, core_hi + step, t_lo, t_hi);
  }
  const double inner_lo = std::max(core_lo, t_lo);
  const double inner_hi = std::min(core_hi, t_hi);
  if (inner_hi - inner_lo > 2.0) {
    const int pieces = std::min(16, static_cast<int>(std::ceil((inner_hi - inner_lo) / 2.0)));
    for (int i = 1; i < pieces; ++i) {
      add_knot(knots, inner_lo + (inner_hi - inner_lo) * i / pieces, t_lo, t_hi);
    }
  }
  std::sort(knots.begin(), knots.end());
  std::vector<double> distinct;
  for (double t : knots) {
    if (distinct.empty() || t - distinct.back() > 1e-12 * std::max(1.0, std::fabs(t))) {
      distinct.push_back(t);
    }
  }
  if (distinct.back() != t_hi) distinct.back() = t_hi;

  // Closed-form mass beyond the integration window.
  Result extra{0.0, 0.0};
  auto add_tail = [&](double t, double denom) {
    const Sample s = transformed(t);
    extra.value += s.value / denom;
    extra.magnitude += s.magnitude / denom;
  };
  if (open_left && std::isfinite(sigma)) add_tail(t_lo, sigma + 1.0);
  if (open_right && std::isfinite(tau)) add_tail(t_hi, tau - 1.0);

  return adaptive(transformed, std::move(distinct), extra, tol, opts);
}

// Subnormal samples carry only a few significant bits; their mass is far
// below any tolerance, so they count as zero.
double flush(double v) { return std::fabs(v) < std::numeric_limits<double>::min() ? 0.0 : v; }

SampleFn plain(const Integrand& f) {
  return [&f](double y) -> Sample {
    const double v = flush(f(y));
    return {v, std::fabs(v)};
  };
}

using SampleFn2D = std::function<Sample(double, double)>;

Result line(const SampleFn& f, const LineHints& hints, double tol, const Options& opts) {
  const double c = hints.scale;
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("line integral scale must be positive");
  const double lo = hints.support_lo;
  const double hi = hints.support_hi;
  if (!(hi > lo)) return {0.0, 0.0};

  if (std::isfinite(lo) && std::isfinite(hi)) {
    // Bounded support: no tails, so integrate in u itself, which keeps
    // intervals far from the origin resolvable.
    std::vector<double> knots{lo, hi};
    for (double b : hints.breakpoints) add_knot(knots, b, lo, hi);
    for (double t : {-c, 0.0, c}) add_knot(knots, t, lo, hi);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    return adaptive(f, std::move(knots), {0.0, 0.0}, tol, opts);
  }

  const bool has_pos = hi > 0.0;
  const bool has_neg = lo < 0.0;
  double s_lo = kInf;
  double s_hi = 0.0;
  if (has_pos) {
    s_lo = std::min(s_lo, std::max(lo, 0.0) / c);
    s_hi = std::max(s_hi, hi / c);
  }
  if (has_neg) {
    s_lo = std::min(s_lo, std::max(-hi, 0.0) / c);
    s_hi = std::max(s_hi, -lo / c);
  }

  SingularityHints folded;
  folded.left_exponent = 0.0;
  folded.decay_exponent = hints.decay_exponent;
  folded.support_lo = s_lo;
  folded.support_hi = s_hi;
  for (double b : hints.breakpoints) {
    if (b != 0.0 && std::isfinite(b)) folded.breakpoints.push_back(std::fabs(b) / c);
  }

  const SampleFn g = [&](double s) -> Sample {
    const double u = c * s;
    Sample sum{0.0, 0.0};
    for (double x : {u, -u}) {
      if (x >= lo && x <= hi) {
        const Sample v = f(x);
        sum.value += v.value;
        sum.magnitude += v.magnitude;
      }
    }
    return {c * sum.value, c * sum.magnitude};
  };
  return semiaxis(g, folded, tol, opts);
}

Result halfplane(const SampleFn2D& f, const HalfPlaneHints& hints, double tol,
                 const Options& opts) {
  Options inner = opts;
  inner.abs_tol = 0.0;
  const double inner_tol = tol * opts.inner_fraction;
  const SampleFn slice = [&](double v) -> Sample {
    LineHints row = hints.u;
    if (hints.u_scale) row.scale = hints.u_scale(v);
    const Result r = line([&](double u) { return f(u, v); }, row, inner_tol, inner);
    return {r.value, r.magnitude};
  };
  return semiaxis(slice, hints.v, tol, opts);
}

}  // namespace

double integrate_semiaxis(const Integrand& f, const SingularityHints& hints, double tol,
                          const Options& opts) {
  return semiaxis(plain(f), hints, tol, opts).value;
}

double integrate_truncated(const Integrand& f, SingularityHints hints, double cutoff,
                           double tol, const Options& opts) {
  if (!(cutoff > 0.0)) throw DomainError("truncation cutoff must be positive");
  hints.support_hi = std::min(hints.support_hi, cutoff);
  return integrate_semiaxis(f, hints, tol, opts);
}

double integrate_line(const Integrand& f, const LineHints& hints, double tol,
                      const Options& opts) {
  return line(plain(f), hints, tol, opts).value;
}

double integrate_halfplane(const Integrand2D& f, const HalfPlaneHints& hints, double tol,
                           const Options& opts) {
  const SampleFn2D g = [&f](double u, double v) -> Sample {
    const double x = flush(f(u, v));
    return {x, std::fabs(x)};
  };
  return halfplane(g, hints, tol, opts).value;
}

std::complex<double> integrate_halfplane_complex(const ComplexIntegrand2D& f,
                                                 const HalfPlaneHints& hints, double tol,
                                                 const Options& opts) {
  // Each part is measured against the modulus of f, so a part that vanishes
  // identically (pure rounding noise) still converges.
  Options parts = opts;
  parts.relative_to_abs = true;
  auto part = [&](bool imaginary) {
    const SampleFn2D g = [&f, imaginary](double u, double v) -> Sample {
      const std::complex<double> z = f(u, v);
      const double m = flush(std::abs(z));
      if (m == 0.0) return {0.0, 0.0};
      return {imaginary ? z.imag() : z.real(), m};
    };
    return halfplane(g, hints, tol, parts).value;
  };
  return {part(false), part(true)};
}

}  // namespace oplab::quad
