#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace oplab::quad {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline constexpr double kDefaultTol1D = 1e-10;
inline constexpr double kDefaultTol2D = 1e-6;

using Integrand = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;
using ComplexIntegrand2D = std::function<std::complex<double>(double, double)>;

/// Shape information for an integrand on (0, inf).
///
/// `left_exponent` is sigma in f(y) ~ y^sigma as y -> 0+, `decay_exponent` is
/// tau in f(y) ~ y^-tau as y -> inf.  +inf means "vanishes faster than any
/// power".  The support bounds let compactly supported integrands skip the
/// asymptotic regions entirely.
struct SingularityHints {
  std::vector<double> breakpoints;
  double left_exponent = 0.0;
  double decay_exponent = kInf;
  double support_lo = 0.0;
  double support_hi = kInf;
};

/// Shape information for an integrand on the real line.
///
/// `scale` is the length over which the integrand varies near the origin;
/// integration runs in u = scale * s.
struct LineHints {
  std::vector<double> breakpoints;
  double decay_exponent = kInf;
  double support_lo = -kInf;
  double support_hi = kInf;
  double scale = 1.0;
};

/// Inner (u) and outer (v) hints for an iterated half-plane integral.
/// `u_scale`, when set, overrides `u.scale` per outer abscissa v.
struct HalfPlaneHints {
  LineHints u;
  SingularityHints v;
  std::function<double(double)> u_scale;
};

struct Options {
  /// Bisection budget per integral.
  int max_segments = 2000;
  /// Decades beyond the core scales before the power-law end corrections
  /// take over.
  double decades = 80.0;
  /// Absolute error floor, for integrals that may vanish.
  double abs_tol = 0.0;
  /// Inner tolerance of iterated integrals, as a fraction of the outer one.
  double inner_fraction = 0.05;
  /// Measure the error against the integral of |f| instead of |integral f|.
  /// Used for sign-changing integrands whose integral may cancel to zero.
  bool relative_to_abs = false;
};

/// Integral over (0, inf) to relative accuracy `tol`.
///
/// Integration runs in t = ln y with adaptive Gauss-Kronrod 10/21, split at
/// breakpoints and at 1.  Beyond `decades` decades on either side of the core
/// scales the remaining mass is added in closed form from the hinted power
/// law.  Throws DivergenceError when the hints rule out convergence and
/// AccuracyError when the segment budget runs out.
double integrate_semiaxis(const Integrand& f, const SingularityHints& hints,
                          double tol = kDefaultTol1D, const Options& opts = {});

/// Integral over (0, cutoff); the decay exponent is not consulted.
double integrate_truncated(const Integrand& f, SingularityHints hints,
                           double cutoff, double tol = kDefaultTol1D,
                           const Options& opts = {});

/// Integral over the real line, folded onto (0, inf) around the origin.
double integrate_line(const Integrand& f, const LineHints& hints,
                      double tol = kDefaultTol1D, const Options& opts = {});

/// Iterated integral over R x (0, inf): inner over u, outer over v.
double integrate_halfplane(const Integrand2D& f, const HalfPlaneHints& hints,
                           double tol = kDefaultTol2D,
                           const Options& opts = {});

/// Complex-valued variant; real and imaginary parts are integrated
/// separately, each to `tol` relative to the integral of |f|.
std::complex<double> integrate_halfplane_complex(const ComplexIntegrand2D& f,
                                                 const HalfPlaneHints& hints,
                                                 double tol = kDefaultTol2D,
                                                 const Options& opts = {});

}  // namespace oplab::quad
