#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>

#include "oplab/quad.hpp"

namespace oplab {

/// A function on (0, inf) together with its quadrature hints.
struct Func1D {
  std::function<double(double)> eval;
  quad::SingularityHints hints;
  std::string label;

  double operator()(double x) const { return eval(x); }
};

/// A function on the upper half-plane, f(x, y) with y > 0.
struct Func2D {
  std::function<double(double, double)> eval;
  quad::LineHints x_hints;
  quad::SingularityHints y_hints;
  std::string label;

  double operator()(double x, double y) const { return eval(x, y); }
};

/// A complex-valued half-plane function (projection inputs).
struct ComplexFunc2D {
  std::function<std::complex<double>(double, double)> eval;
  quad::LineHints x_hints;
  quad::SingularityHints y_hints;
  std::string label;

  std::complex<double> operator()(double x, double y) const { return eval(x, y); }
};

}  // namespace oplab
