#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oplab/conditions.hpp"

namespace oplab::schur {

/// The four numbers fixing a Schur-type bound for H : L^p_a -> L^q_b.
struct CertificateInput {
  double p = 2.0;
  double q = 2.0;
  double a = 0.0;
  double b = 0.0;
  OperatorParams params;
};

/// Exponent witness for the Schur test with auxiliary functions
/// h1(y) = y^-s and h2(x) = x^-r, plus the resulting constants.
struct SchurCertificate {
  double omega = 0.0;  // alpha + beta - gamma - a
  double t = 0.0;      // kernel splitting exponent
  double r = 0.0;
  double s = 0.0;
  double d = 0.0;      // r - s
  double M1 = 0.0;
  double M2 = 0.0;
  double bound = 0.0;  // M1 * M2
  /// Closed-form values of the first and second test integrals
  /// (M1^p' and M2^q); for p = 1 the first is the supremum constant.
  double first_constant = 0.0;
  double second_constant = 0.0;
  /// p = 1: the first condition is a supremum rather than an integral.
  bool limit_case = false;
};

/// Number of points in the uniform d-grid on (0, (b+1)/q).
inline constexpr int kDGridPoints = 1024;

/// Finds a certificate for an accepted tuple with 1 <= p <= q < inf.
///
/// Scans d = r - s over a uniform grid and keeps the smallest feasible d
/// with s at the midpoint of its feasible interval; `forced_d` pins d
/// instead. Throws PreconditionError if the tuple is not accepted and
/// InfeasibleError if no grid point is feasible.
SchurCertificate find_certificate(const CertificateInput& in,
                                  std::optional<double> forced_d = std::nullopt);

struct VerificationReport {
  bool passed = false;
  bool degenerate = false;
  std::string degenerate_reason;
  std::size_t samples = 0;
  double max_residual_first = 0.0;
  double max_residual_second = 0.0;
};

/// Checks both test conditions at `n_samples` log-uniform points in
/// [1e-4, 1e4] by direct quadrature against the certificate's constants.
///
/// A degenerate splitting exponent (t <= 0, or t >= 1 with p > 1) is
/// reported, not thrown. A divergent test integral throws DivergenceError;
/// a residual above `tol` throws CertificateError naming the condition and
/// the sample.
VerificationReport verify_certificate(const SchurCertificate& cert, const CertificateInput& in,
                                      std::size_t n_samples = 100, double tol = 1e-8);

struct SupTestReport {
  std::vector<double> grid;
  std::vector<double> values;
  double sup = 0.0;
  double min = 0.0;
  /// sup / min - 1.
  double spread = 0.0;
  bool preconditions_hold = false;
  /// Closed-form constant when the preconditions hold.
  std::optional<double> expected;
};

/// Column integrals c(y) = integral K(x, y) x^a dx of the kernel
/// K = x^alpha y^(beta-a) (x+y)^-gamma, whose supremum is the L^1_a norm.
SupTestReport sup_test_L1(const OperatorParams& params, double a, std::span<const double> y_grid,
                          double tol = 1e-10);

/// Row integrals integral x^alpha y^beta (x+y)^-gamma dy, whose supremum is
/// the L^inf norm.
SupTestReport sup_test_Linf(const OperatorParams& params, std::span<const double> x_grid,
                            double tol = 1e-10);

}  // namespace oplab::schur
