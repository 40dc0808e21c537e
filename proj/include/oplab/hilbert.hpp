#pragma once

#include <span>
#include <vector>

#include "oplab/conditions.hpp"
#include "oplab/func.hpp"
#include "oplab/quad.hpp"

namespace oplab::hilbert {

/// H f(x) = x^alpha * integral_0^inf f(y) y^beta (x + y)^-gamma dy.
double apply_H(const OperatorParams& params, const Func1D& f, double x,
               double tol = quad::kDefaultTol1D);

/// H* f(y) = y^(beta-a) * integral_0^inf f(x) x^(alpha+b) (x + y)^-gamma dx,
/// the adjoint of H : L^p_a -> L^q_b.
double apply_H_adjoint(const OperatorParams& params, double a, double b, const Func1D& f,
                       double y, double tol = quad::kDefaultTol1D);

/// x -> H f(x) as a function carrying its own quadrature hints.
Func1D image(const OperatorParams& params, const Func1D& f, double tol = quad::kDefaultTol1D);

/// x -> H* f(x) with hints.
Func1D adjoint_image(const OperatorParams& params, double a, double b, const Func1D& f,
                     double tol = quad::kDefaultTol1D);

/// f_R(x) = f(R x).
Func1D dilate(const Func1D& f, double R);

/// Settings for the essential-supremum heuristic used for p = inf.
struct SupSearch {
  double lo = 1e-6;
  double hi = 1e6;
  int points_per_decade = 20;
  int refine_steps = 80;
};

/// Largest |f| found by a log-grid scan plus golden-section refinement
/// around the best grid point. A lower bound for ess sup |f|.
double essential_sup(const Func1D& f, const SupSearch& search = {});

/// (integral |f|^p x^a dx)^(1/p), or the essential sup for p = inf.
double weighted_lp_norm(const Func1D& f, const WeightedSpace& space,
                        double tol = quad::kDefaultTol1D);

/// Same, with the integral cut off at x = cutoff.
double truncated_lp_norm(const Func1D& f, const WeightedSpace& space, double cutoff,
                         double tol = quad::kDefaultTol1D);

/// integral u(x) v(x) x^w dx.
double pairing(const Func1D& u, const Func1D& v, double w, double tol = quad::kDefaultTol1D);

/// Boundedness criterion for H : L^p_a -> L^q_b, 1 <= p <= q <= inf.
ConditionReport hilbert_verdict(double p, double q, double a, double b,
                                const OperatorParams& params);

/// The gamma that satisfies the balance relation for the given spaces.
double balanced_gamma(double p, double q, double a, double b, double alpha, double beta);

/// -p(gamma-beta-1) < a+1 < p(beta+1).
bool direct_form_holds(double p, double a, const OperatorParams& params);
/// -q alpha < b+1 < q(gamma-alpha); equivalent to the direct form whenever
/// the balance relation holds.
bool adjoint_form_holds(double q, double b, const OperatorParams& params);

/// Exact norm of H on L^p_a in the diagonal case gamma = alpha + beta + 1.
double sharp_norm(const WeightedSpace& space, const OperatorParams& params);

struct ExtremalResult {
  double quotient = 0.0;
  double pairing = 0.0;
  double f_norm = 0.0;
  double g_norm = 0.0;
  double sharp = 0.0;
  double lower_bound = 0.0;
  /// The lower bound is only proven for 0 < xi < p(beta+1) - (a+1); NaN outside.
  bool lower_bound_valid = false;
};

/// <g, H f>_{x^a dx} / (|f|_{p,a} |g|_{p',a}) for the truncated powers
/// f = x^{-(a+1+xi)/p} 1_[1,inf), g = x^{-(a+1+xi)/p'} 1_[1,inf).
ExtremalResult extremal_quotient(const WeightedSpace& space, const OperatorParams& params,
                                 double xi, double tol = quad::kDefaultTol1D);

/// max over probes of |H f_R(x) - R^(gamma-beta-alpha-1) Hf(Rx)| / (1 + |Hf(Rx)|).
double dilation_residual(const OperatorParams& params, const Func1D& f, double R,
                         std::span<const double> probes, double tol = quad::kDefaultTol1D);

/// |<H f, g>_{x^b} - <f, H* g>_{y^a}|.
double duality_residual(const OperatorParams& params, double a, double b, const Func1D& f,
                        const Func1D& g, double tol = quad::kDefaultTol1D);

struct GrowthResult {
  /// Least-squares slope of log(|H f_R|_{q,b} / |f_R|_{p,a}) against log R.
  double slope_log_R = 0.0;
  /// The same slope against log(1/R), i.e. against the support scale of f_R.
  double exponent = 0.0;
  /// -(gamma - alpha - beta - 1 - (b+1)/q + (a+1)/p).
  double predicted = 0.0;
  std::vector<double> R;
  std::vector<double> log_ratio;
};

/// Norms of H f_R are truncated at this x, so that regimes where H f is not
/// in L^q_b still produce finite, comparable values.
inline constexpr double kGrowthCutoff = 1e60;

GrowthResult growth_exponent(double p, double q, double a, double b,
                             const OperatorParams& params, const Func1D& f,
                             std::span<const double> R_grid, double tol = 1e-8);

/// Geometric grid of n points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int n);

}  // namespace oplab::hilbert
