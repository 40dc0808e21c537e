#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "oplab/conditions.hpp"
#include "oplab/schur.hpp"

namespace oplab::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Relative accuracy claimed for closed-form values.
inline constexpr double kClosedFormTol = 1e-14;

/// A number, or "inf" / "-inf" / "nan" for non-finite values.
json number(double v);

/// Inverse of `number`; also accepts numeric strings.
double to_double(const json& j);

/// Parses a flag value; "inf", "+inf", "-inf" and "infinity" are accepted.
double parse_real(std::string_view text);

json to_json(const Inequality& i);
json to_json(const ConditionReport& r);

/// Certificate document: the witness, the input tuple and both constants.
json certificate_to_json(const schur::SchurCertificate& cert, const schur::CertificateInput& in);

struct CertificateDocument {
  schur::SchurCertificate cert;
  schur::CertificateInput input;
};

/// Throws DomainError when a field is missing or malformed.
CertificateDocument certificate_from_json(const json& j);

json to_json(const schur::VerificationReport& r);

/// The envelope every command emits.
struct Report {
  std::string command;
  json input = json::object();
  json result = json::object();
  /// Dotted paths into `result`, array levels skipped; each value is the
  /// tolerance of every numeric field at or below that path (0 = exact).
  json tolerances = json::object();
  double elapsed_seconds = 0.0;
};

json to_json(const Report& r);
std::string render(const Report& r);

}  // namespace oplab::report
