#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "oplab/func.hpp"
#include "oplab/quad.hpp"

namespace oplab::funcdsl {

/// Power-law behaviour of an expression at one end of a variable's range.
struct Asymptote {
  enum class Kind { Zero, Power, Fast, Unknown };
  Kind kind = Kind::Unknown;
  /// |f| ~ t^exponent for Kind::Power, with t the variable's magnitude.
  double exponent = 0.0;
  /// +1 or -1 when the sign near the endpoint is known, 0 otherwise.
  int sign = 0;
};

enum class Variable { X, Y };
enum class Endpoint { ZeroRight, PlusInfinity, MinusInfinity };

struct Node;

/// An immutable parsed expression in the variables x and y.
///
/// Copies share the underlying tree and compiled program, so an Expr is cheap
/// to pass by value and safe to evaluate concurrently.
class Expr {
 public:
  /// Evaluates with x only; throws DomainError if the expression uses y.
  double operator()(double x) const;
  double operator()(double x, double y) const;

  bool uses_y() const noexcept { return uses_y_; }

  /// Fully parenthesised form with %.17g constants; parse(str()) has the
  /// same str().
  std::string str() const;

  /// Finite indicator endpoints on the given variable, sorted and unique.
  std::vector<double> breakpoints(Variable v) const;
  /// Hull of the set where the expression can be nonzero along `v`.
  std::pair<double, double> support(Variable v) const;
  Asymptote asymptote(Variable v, Endpoint e) const;

  /// Quadrature hints for a function of x on (0, inf).
  quad::SingularityHints hints_1d() const;
  /// Hints for the real-line variable x of a half-plane function.
  quad::LineHints hints_line_x() const;
  /// Hints for the vertical variable y > 0 of a half-plane function.
  quad::SingularityHints hints_y() const;

  Func1D to_func1d() const;
  Func2D to_func2d() const;

  const Node& root() const { return *root_; }

 private:
  friend Expr parse(std::string_view src);

  struct Instr {
    std::uint8_t op;
    double value;
    double lo;
    double hi;
  };

  std::shared_ptr<const Node> root_;
  std::shared_ptr<const std::vector<Instr>> program_;
  std::size_t depth_ = 0;
  bool uses_y_ = false;

  double run(double x, double y) const;
};

/// Parses the expression language documented in the README.
///
/// Throws ParseError carrying the byte offset of the offending token.
Expr parse(std::string_view src);

/// Parse-and-evaluate convenience.
double eval(const Expr& e, double x);
double eval(const Expr& e, double x, double y);

}  // namespace oplab::funcdsl
