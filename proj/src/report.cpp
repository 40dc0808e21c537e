#include "oplab/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "oplab/errors.hpp"

namespace oplab::report {

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double parse_real(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "inf" || s == "+inf" || s == "infinity") return kInfinity;
  if (s == "-inf" || s == "-infinity") return -kInfinity;
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("not a real number: '" + std::string(text) + "'");
  }
  return v;
}

double to_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    return parse_real(s);
  }
  throw DomainError("expected a number, got " + j.dump());
}

json to_json(const Inequality& i) {
  return {{"text", i.text}, {"lhs", number(i.lhs)}, {"rhs", number(i.rhs)}, {"holds", i.holds}};
}

json to_json(const ConditionReport& r) {
  json ineq = json::array();
  for (const auto& i : r.inequalities) ineq.push_back(to_json(i));
  json cross = json::array();
  for (const auto& i : r.cross_checks) cross.push_back(to_json(i));
  return {{"regime", r.regime},
          {"clause", r.clause},
          {"verdict", r.verdict()},
          {"bounded", r.bounded},
          {"relation",
           {{"text", r.relation},
            {"required_gamma", number(r.relation_rhs)},
            {"residual", number(r.relation_residual)},
            {"holds", r.relation_holds}}},
          {"inequalities", ineq},
          {"inequalities_hold", r.inequalities_hold},
          {"cross_checks", cross}};
}

json certificate_to_json(const schur::SchurCertificate& c, const schur::CertificateInput& in) {
  return {{"input",
           {{"p", number(in.p)},
            {"q", number(in.q)},
            {"a", number(in.a)},
            {"b", number(in.b)},
            {"alpha", number(in.params.alpha)},
            {"beta", number(in.params.beta)},
            {"gamma", number(in.params.gamma)}}},
          {"omega", number(c.omega)},
          {"t", number(c.t)},
          {"r", number(c.r)},
          {"s", number(c.s)},
          {"d", number(c.d)},
          {"M1", number(c.M1)},
          {"M2", number(c.M2)},
          {"bound", number(c.bound)},
          {"first_constant", number(c.first_constant)},
          {"second_constant", number(c.second_constant)},
          {"limit_case", c.limit_case}};
}

CertificateDocument certificate_from_json(const json& j) {
  auto field = [](const json& obj, const char* key) -> const json& {
    if (!obj.is_object() || !obj.contains(key)) {
      throw DomainError(std::string("certificate is missing field '") + key + "'");
    }
    return obj.at(key);
  };
  // Accept either the bare document or a report whose result holds it.
  const json& doc = j.contains("result") && j.at("result").contains("certificate")
                        ? j.at("result").at("certificate")
                        : j;
  CertificateDocument out;
  const json& in = field(doc, "input");
  out.input.p = to_double(field(in, "p"));
  out.input.q = to_double(field(in, "q"));
  out.input.a = to_double(field(in, "a"));
  out.input.b = to_double(field(in, "b"));
  out.input.params.alpha = to_double(field(in, "alpha"));
  out.input.params.beta = to_double(field(in, "beta"));
  out.input.params.gamma = to_double(field(in, "gamma"));
  auto& c = out.cert;
  c.omega = to_double(field(doc, "omega"));
  c.t = to_double(field(doc, "t"));
  c.r = to_double(field(doc, "r"));
  c.s = to_double(field(doc, "s"));
  c.d = to_double(field(doc, "d"));
  c.M1 = to_double(field(doc, "M1"));
  c.M2 = to_double(field(doc, "M2"));
  c.bound = to_double(field(doc, "bound"));
  c.first_constant = to_double(field(doc, "first_constant"));
  c.second_constant = to_double(field(doc, "second_constant"));
  const json& limit = field(doc, "limit_case");
  if (!limit.is_boolean()) throw DomainError("certificate field 'limit_case' must be a boolean");
  c.limit_case = limit.get<bool>();
  return out;
}

json to_json(const schur::VerificationReport& r) {
  return {{"passed", r.passed},
          {"degenerate", r.degenerate},
          {"degenerate_reason", r.degenerate_reason},
          {"samples", r.samples},
          {"max_residual_first", number(r.max_residual_first)},
          {"max_residual_second", number(r.max_residual_second)}};
}

json to_json(const Report& r) {
  return {{"schema", kSchemaVersion},
          {"command", r.command},
          {"input", r.input},
          {"result", r.result},
          {"tolerances", r.tolerances},
          {"elapsed_seconds", r.elapsed_seconds}};
}

std::string render(const Report& r) { return to_json(r).dump(2); }

}  // namespace oplab::report
