#pragma once

namespace oplab::specfun {

/// Natural logarithm of the Gamma function for x > 0.
///
/// Rational minimax approximations on (0, 3) and a 13-term Lanczos sum
/// above; relative error below 1e-13 on [1e-6, 1e6] away from the zeros at
/// x = 1 and x = 2, where the absolute error is below 1e-16.
/// Throws DomainError for x <= 0 or non-finite x.
double log_gamma(double x);

/// Gamma function for 0 < x < 171.6.
double gamma(double x);

/// Euler Beta function B(m, n) = Gamma(m) Gamma(n) / Gamma(m + n).
///
/// Evaluated as a ratio of scaled Lanczos sums so that no intermediate
/// Gamma value is formed; safe for arguments up to ~1e300.
/// Throws DomainError if m <= 0 or n <= 0.
double beta(double m, double n);

/// log B(m, n), for arguments where B under- or overflows.
double log_beta(double m, double n);

}  // namespace oplab::specfun
