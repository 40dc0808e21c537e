#pragma once

#include <complex>
#include <span>
#include <vector>

#include "oplab/conditions.hpp"
#include "oplab/func.hpp"
#include "oplab/quad.hpp"

namespace oplab::bergman {

/// z = x + iy with y > 0.
struct HalfPlanePoint {
  double x = 0.0;
  double y = 1.0;
};

/// J(y) = integral over R of |x + iy|^-alpha dx = B(1/2, (alpha-1)/2) y^(1-alpha).
/// Throws DivergenceError for alpha <= 1.
double kernel_row_integral(double alpha, double y);

/// The same integral by direct quadrature.
double kernel_row_quadrature(double alpha, double y, double tol = quad::kDefaultTol1D);

/// |f(., y)|_{L^p(dx)}; p may be infinite.
double slice_norm(const Func2D& f, double p, double y, double tol = quad::kDefaultTol1D);

/// |f|_{p,q,nu}. For q = inf this is the supremum over y of the slice norms
/// and nu is ignored.
double mixed_norm(const Func2D& f, const MixedNormSpace& space, double tol = 1e-8);

/// f_R(z) = f(R z).
Func2D dilate(const Func2D& f, double R);

/// T+ f(z) = y^alpha * integral f(w) v^beta |z - conj(w)|^-(1+gamma) du dv.
double apply_Tplus(const OperatorParams& params, const Func2D& f, HalfPlanePoint z,
                   double tol = quad::kDefaultTol2D);

/// T f(z) = y^alpha * integral f(w) v^beta (z - conj(w))^-(1+gamma) du dv,
/// principal branch.
std::complex<double> apply_T(const OperatorParams& params, const Func2D& f, HalfPlanePoint z,
                             double tol = quad::kDefaultTol2D);

/// Reproducing constant c_nu = (2^nu / pi) (nu + 1) i^(2+nu), so that
/// c_nu (z - conj(w))^-(2+nu) = (2^nu / pi) (nu + 1) ((z - conj(w)) / i)^-(2+nu).
/// For nu = 0 this is -1/pi.
std::complex<double> bergman_constant(double nu);

/// P_nu f(z) = c_nu * integral f(w) (z - conj(w))^-(2+nu) v^nu du dv.
std::complex<double> bergman_project(double nu, const ComplexFunc2D& f, HalfPlanePoint z,
                                     double tol = quad::kDefaultTol2D);
std::complex<double> bergman_project(double nu, const Func2D& f, HalfPlanePoint z,
                                     double tol = quad::kDefaultTol2D);

struct ReductionRow {
  double y = 0.0;
  double lhs = 0.0;  // |(T+ f)(. + iy)|_{L^p(dx)}
  double rhs = 0.0;  // B(1/2, gamma/2) H(v -> |f(., v)|_p)(y)
  double slack = 0.0;
  bool holds = false;
};

struct ReductionReport {
  std::vector<ReductionRow> rows;
  bool holds = false;
};

/// Compares both sides of the slice-norm reduction of T+ to H at each y.
ReductionReport reduction_bound_check(const OperatorParams& params, const Func2D& f, double p,
                                      std::span<const double> y_grid, double tol = 1e-4);

enum class Selector { TPlus, T, Projection };

struct BergmanVerdictRequest {
  Selector op = Selector::TPlus;
  MixedNormSpace source;
  MixedNormSpace target;
  /// For the projection only beta is read; alpha = 0 and gamma = beta + 1.
  OperatorParams params;
};

/// Boundedness criterion for T+, T or P_beta between mixed-norm spaces.
/// Throws DomainError for spaces outside the covered regimes.
ConditionReport bergman_verdict(const BergmanVerdictRequest& req);

enum class NormCase { Linf, L1 };

/// Exact norm of T+ on L^inf (a unused) or on L^1_a.
double tplus_exact_norm(NormCase which, const OperatorParams& params, double a = 0.0);

/// c(w) = integral K(z, w) y^a dx dy with K(z, w) = y^alpha v^(beta-a) |z - conj(w)|^-(1+gamma),
/// the kernel column integral whose supremum over w is the L^1_a norm.
double column_integral(const OperatorParams& params, double a, HalfPlanePoint w,
                       double tol = quad::kDefaultTol2D);

/// Default probe points {1/2, 1, 2} x {-1, 0, 1} (y x x).
std::vector<HalfPlanePoint> default_probes();

}  // namespace oplab::bergman
