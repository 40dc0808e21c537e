#pragma once

#include <limits>
#include <string>
#include <vector>

namespace oplab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Absolute tolerance for the balance relation, which is a real equation.
inline constexpr double kRelationTolerance = 1e-12;

/// Kernel exponents shared by H, T and T+: weights x^alpha, y^beta and the
/// kernel power (x + y)^-gamma.
struct OperatorParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
};

/// L^p_a on (0, inf); p may be kInfinity, in which case `a` is ignored.
struct WeightedSpace {
  double p = 2.0;
  double a = 0.0;
};

/// L^{p,q}_nu on the upper half-plane: L^p in x, then L^q(y^nu dy) in y.
struct MixedNormSpace {
  double p = 2.0;
  double q = 2.0;
  double nu = 0.0;
};

/// Hoelder conjugate with 1' = inf and inf' = 1.
double conjugate(double p);

/// (a + 1) / p with the convention (a + 1) / inf = 0.
double weight_ratio(double a, double p);

/// One strict inequality lhs < rhs, evaluated.
struct Inequality {
  std::string text;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

Inequality strictly_less(std::string text, double lhs, double rhs);

/// Outcome of a boundedness criterion, with every quantity evaluated so the
/// report can be audited by hand.
struct ConditionReport {
  std::string regime;
  std::string clause;
  std::string relation;       // e.g. "gamma = alpha+beta+1-(a+1)/p+(b+1)/q"
  double relation_rhs = 0.0;  // value the relation requires of gamma
  double relation_residual = 0.0;
  bool relation_holds = false;
  std::vector<Inequality> inequalities;
  bool inequalities_hold = false;
  /// Equivalent forms shown for cross-checking; they do not decide.
  std::vector<Inequality> cross_checks;
  bool bounded = false;

  std::string verdict() const { return bounded ? "bounded" : "unbounded"; }
};

/// Fills relation fields from gamma and the value the relation requires.
void set_relation(ConditionReport& r, std::string text, double gamma, double required);

/// Appends the inequalities and finalises `inequalities_hold` and `bounded`.
void conclude(ConditionReport& r, std::vector<Inequality> inequalities);

}  // namespace oplab
