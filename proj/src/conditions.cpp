#include "oplab/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "oplab/errors.hpp"

namespace oplab {

double conjugate(double p) {
  if (!(p >= 1.0)) throw DomainError("exponent must be >= 1, got " + std::to_string(p));
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double weight_ratio(double a, double p) { return std::isinf(p) ? 0.0 : (a + 1.0) / p; }

Inequality strictly_less(std::string text, double lhs, double rhs) {
  return {std::move(text), lhs, rhs, lhs < rhs};
}

void set_relation(ConditionReport& r, std::string text, double gamma, double required) {
  r.relation = std::move(text);
  r.relation_rhs = required;
  r.relation_residual = gamma - required;
  r.relation_holds = std::fabs(r.relation_residual) <= kRelationTolerance;
}

void conclude(ConditionReport& r, std::vector<Inequality> inequalities) {
  r.inequalities = std::move(inequalities);
  r.inequalities_hold = std::all_of(r.inequalities.begin(), r.inequalities.end(),
                                    [](const Inequality& i) { return i.holds; });
  r.bounded = r.relation_holds && r.inequalities_hold;
}

}  // namespace oplab
