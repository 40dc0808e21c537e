#include "oplab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "oplab/bergman.hpp"
#include "oplab/errors.hpp"
#include "oplab/funcdsl.hpp"
#include "oplab/hilbert.hpp"
#include "oplab/report.hpp"
#include "oplab/schur.hpp"

namespace oplab::cli {
namespace {

using report::json;
using report::number;
using report::parse_real;

// Flag values are kept as text so that "inf" parses the same everywhere.
struct Flags {
  std::map<std::string, std::string> text;
  std::vector<std::string> order;
  std::optional<std::string> tol;

  double real(const std::string& name) const { return parse_real(text.at(name)); }
  const std::string& str(const std::string& name) const { return text.at(name); }
};

void add_real(CLI::App* sub, Flags& f, const std::string& name, const std::string& fallback,
              const std::string& help) {
  f.text[name] = fallback;
  f.order.push_back(name);
  sub->add_option("--" + name, f.text[name], help)->capture_default_str();
}

void add_text(CLI::App* sub, Flags& f, const std::string& name, const std::string& fallback,
              const std::string& help) {
  f.text[name] = fallback;
  f.order.push_back(name);
  sub->add_option("--" + name, f.text[name], help)->capture_default_str();
}

void add_tol(CLI::App* sub, Flags& f) {
  sub->add_option("--tol", f.tol, "quadrature tolerance (overrides OPLAB_TOL)");
}

void add_tuple(CLI::App* sub, Flags& f, bool with_target) {
  add_real(sub, f, "p", "2", "source exponent");
  if (with_target) add_real(sub, f, "q", "2", "target exponent");
  add_real(sub, f, "a", "0", "source weight");
  if (with_target) add_real(sub, f, "b", "0", "target weight");
  add_real(sub, f, "alpha", "0", "weight exponent on x");
  add_real(sub, f, "beta", "0", "weight exponent on y");
  add_real(sub, f, "gamma", "1", "kernel exponent");
}

double resolve_tol(const Flags& f, double fallback) {
  double tol = fallback;
  if (f.tol) {
    tol = parse_real(*f.tol);
  } else if (const char* env = std::getenv("OPLAB_TOL"); env != nullptr && *env != '\0') {
    tol = parse_real(env);
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError("tolerance must be positive and finite, got " + std::to_string(tol));
  }
  return tol;
}

json echo(const Flags& f) {
  json in = json::object();
  for (const auto& name : f.order) {
    const std::string& v = f.text.at(name);
    try {
      in[name] = number(parse_real(v));
    } catch (const DomainError&) {
      in[name] = v;
    }
  }
  return in;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_real(item));
  }
  if (out.empty()) throw DomainError("empty list: '" + text + "'");
  return out;
}

OperatorParams params_of(const Flags& f) {
  return {f.real("alpha"), f.real("beta"), f.real("gamma")};
}

std::optional<double> try_sharp(double p, double q, double a, double b,
                                const OperatorParams& prm) {
  if (p != q || a != b) return std::nullopt;
  try {
    return hilbert::sharp_norm({p, a}, prm);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

std::optional<double> try_bound(double p, double q, double a, double b,
                                const OperatorParams& prm) {
  if (!std::isfinite(q)) return std::nullopt;
  try {
    return schur::find_certificate({p, q, a, b, prm}).bound;
  } catch (const Error&) {
    return std::nullopt;
  }
}

json optional_number(std::optional<double> v) { return v ? number(*v) : json(nullptr); }

bergman::Selector selector_of(const std::string& name) {
  if (name == "tplus" || name == "T+") return bergman::Selector::TPlus;
  if (name == "t" || name == "T") return bergman::Selector::T;
  if (name == "projection" || name == "P") return bergman::Selector::Projection;
  throw DomainError("unknown operator '" + name + "' (expected tplus, t or projection)");
}

// -- commands ---------------------------------------------------------------

// Inequality sides are closed-form arithmetic on the inputs.
json verdict_tolerances() {
  return {{"relation.residual", kRelationTolerance},
          {"relation.required_gamma", report::kClosedFormTol},
          {"inequalities", report::kClosedFormTol},
          {"cross_checks", report::kClosedFormTol}};
}

void verdict_hilbert(const Flags& f, report::Report& rep) {
  const auto r =
      hilbert::hilbert_verdict(f.real("p"), f.real("q"), f.real("a"), f.real("b"), params_of(f));
  rep.result = report::to_json(r);
  rep.tolerances = verdict_tolerances();
}

void verdict_bergman(const Flags& f, report::Report& rep) {
  bergman::BergmanVerdictRequest req;
  req.op = selector_of(f.str("op"));
  req.source = {f.real("p"), f.real("q"), f.real("a")};
  req.target = {f.real("p"), f.real("r"), f.real("b")};
  req.params = params_of(f);
  rep.result = report::to_json(bergman::bergman_verdict(req));
  rep.tolerances = verdict_tolerances();
}

void sharp_norm(const Flags& f, report::Report& rep) {
  const std::string& op = f.str("operator");
  const double p = f.real("p");
  double norm = 0.0;
  if (op == "hilbert") {
    norm = hilbert::sharp_norm({p, f.real("a")}, params_of(f));
  } else if (op == "tplus") {
    if (std::isinf(p)) {
      norm = bergman::tplus_exact_norm(bergman::NormCase::Linf, params_of(f));
    } else if (p == 1.0) {
      norm = bergman::tplus_exact_norm(bergman::NormCase::L1, params_of(f), f.real("a"));
    } else {
      throw DomainError("exact T+ norms are known for p = inf and p = 1 only");
    }
  } else {
    throw DomainError("unknown operator '" + op + "' (expected hilbert or tplus)");
  }
  rep.result = {{"norm", number(norm)}};
  rep.tolerances = {{"norm", report::kClosedFormTol}};
}

schur::CertificateInput certificate_input(const Flags& f) {
  return {f.real("p"), f.real("q"), f.real("a"), f.real("b"), params_of(f)};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw DomainError("cannot write '" + path + "'");
  file << text << '\n';
}

void certify(const Flags& f, report::Report& rep) {
  const auto in = certificate_input(f);
  std::optional<double> d;
  if (!f.str("d").empty()) d = f.real("d");
  const auto cert = schur::find_certificate(in, d);
  const json doc = report::certificate_to_json(cert, in);
  if (!f.str("out").empty()) write_file(f.str("out"), doc.dump(2));
  rep.result = {{"certificate", doc}};
  rep.tolerances = {{"certificate", report::kClosedFormTol}};
}

int certify_verify(const Flags& f, report::Report& rep) {
  const std::string& path = f.str("cert");
  std::ifstream file(path);
  if (!file) throw DomainError("cannot read certificate '" + path + "'");
  json j;
  try {
    j = json::parse(file);
  } catch (const json::parse_error& e) {
    throw DomainError("certificate '" + path + "' is not valid JSON: " + e.what());
  }
  const auto doc = report::certificate_from_json(j);
  const double tol = resolve_tol(f, 1e-8);
  const auto samples = static_cast<std::size_t>(f.real("samples"));
  rep.input["certificate"] = report::certificate_to_json(doc.cert, doc.input);
  rep.tolerances = {{"verification.samples", 0},
                    {"verification.max_residual_first", tol},
                    {"verification.max_residual_second", tol},
                    {"verification.sample", 0},
                    {"verification.point", 0},
                    {"verification.residual", tol}};
  try {
    const auto v = schur::verify_certificate(doc.cert, doc.input, samples, tol);
    rep.result = {{"verification", report::to_json(v)}};
    return v.passed ? kSuccess : kCheckFailed;
  } catch (const CertificateError& e) {
    rep.result = {{"verification",
                   {{"passed", false},
                    {"failed_inequality", e.inequality()},
                    {"sample", e.sample()},
                    {"point", number(e.point())},
                    {"residual", number(e.residual())},
                    {"message", e.what()}}}};
    return kCheckFailed;
  }
}

void estimate(const Flags& f, report::Report& rep) {
  const double p = f.real("p");
  const double q = f.real("q");
  const double a = f.real("a");
  const double b = f.real("b");
  const auto prm = params_of(f);
  const double tol = resolve_tol(f, quad::kDefaultTol1D);
  const auto expr = funcdsl::parse(f.str("expr"));
  const Func1D fn = expr.to_func1d();
  const auto verdict = hilbert::hilbert_verdict(p, q, a, b, prm);

  json values = json::array();
  for (double x : parse_list(f.str("at"))) {
    values.push_back({{"x", number(x)}, {"Hf", number(hilbert::apply_H(prm, fn, x, tol))}});
  }
  const double f_norm = hilbert::weighted_lp_norm(fn, {p, a}, tol);
  const double h_norm = hilbert::weighted_lp_norm(hilbert::image(prm, fn, tol), {q, b}, tol * 10);
  const auto sharp = try_sharp(p, q, a, b, prm);
  const auto bound = try_bound(p, q, a, b, prm);
  rep.input["expr_canonical"] = expr.str();
  rep.result = {{"verdict", verdict.verdict()},
                {"values", values},
                {"f_norm", number(f_norm)},
                {"image_norm", number(h_norm)},
                {"quotient", number(f_norm > 0.0 ? h_norm / f_norm : 0.0)},
                {"sharp", optional_number(sharp)},
                {"certificate_bound", optional_number(bound)}};
  rep.tolerances = {{"values.x", 0},
                    {"values.Hf", tol},
                    {"f_norm", tol},
                    {"image_norm", tol * 10},
                    {"quotient", tol * 11},
                    {"sharp", report::kClosedFormTol},
                    {"certificate_bound", report::kClosedFormTol}};
}

void extremal(const Flags& f, report::Report& rep) {
  const WeightedSpace space{f.real("p"), f.real("a")};
  const auto prm = params_of(f);
  const double tol = resolve_tol(f, quad::kDefaultTol1D);
  json rows = json::array();
  for (double xi : parse_list(f.str("xi"))) {
    const auto r = hilbert::extremal_quotient(space, prm, xi, tol);
    rows.push_back({{"xi", number(xi)},
                    {"quotient", number(r.quotient)},
                    {"sharp", number(r.sharp)},
                    {"lower_bound", number(r.lower_bound)},
                    {"lower_bound_valid", r.lower_bound_valid}});
  }
  rep.result = {{"rows", rows}};
  rep.tolerances = {{"rows.xi", 0},
                    {"rows.quotient", tol * 10},
                    {"rows.sharp", report::kClosedFormTol},
                    {"rows.lower_bound", report::kClosedFormTol}};
}

void dilate(const Flags& f, report::Report& rep) {
  const auto prm = params_of(f);
  const double tol = resolve_tol(f, 1e-8);
  const Func1D fn = funcdsl::parse(f.str("expr")).to_func1d();
  const auto grid = hilbert::geometric_grid(f.real("r-min"), f.real("r-max"),
                                            static_cast<int>(f.real("n")));
  const auto g = hilbert::growth_exponent(f.real("p"), f.real("q"), f.real("a"), f.real("b"),
                                          prm, fn, grid, tol);
  json log_ratio = json::array();
  json R = json::array();
  for (std::size_t i = 0; i < g.R.size(); ++i) {
    R.push_back(number(g.R[i]));
    log_ratio.push_back(number(g.log_ratio[i]));
  }
  rep.result = {{"exponent", number(g.exponent)},
                {"slope_log_R", number(g.slope_log_R)},
                {"predicted", number(g.predicted)},
                {"R", R},
                {"log_ratio", log_ratio}};
  rep.tolerances = {{"exponent", tol * 10},
                    {"slope_log_R", tol * 10},
                    {"predicted", report::kClosedFormTol},
                    {"R", 0},
                    {"log_ratio", tol * 10}};
}

std::string csv_number(std::optional<double> v) {
  if (!v) return "";
  std::ostringstream os;
  os.precision(17);
  os << *v;
  return os.str();
}

std::string sweep(const Flags& f) {
  const std::string& name = f.str("param");
  static const std::vector<std::string> sweepable = {"p", "q", "a", "b", "alpha", "beta", "gamma"};
  if (std::find(sweepable.begin(), sweepable.end(), name) == sweepable.end()) {
    throw DomainError("cannot sweep '" + name + "' (expected p, q, a, b, alpha, beta or gamma)");
  }
  const double from = f.real("from");
  const double to = f.real("to");
  const int n = static_cast<int>(f.real("n"));
  if (n < 1) throw DomainError("sweep needs n >= 1");

  std::ostringstream csv;
  csv << name << ",bounded,sharp,bound,relation_residual\n";
  for (int i = 0; i < n; ++i) {
    const double v = n == 1 ? from : from + (to - from) * i / (n - 1);
    std::map<std::string, double> x;
    for (const auto& k : sweepable) x[k] = f.real(k);
    x[name] = v;
    const OperatorParams prm{x["alpha"], x["beta"], x["gamma"]};
    std::string bounded;
    std::optional<double> sharp;
    std::optional<double> bound;
    std::optional<double> residual;
    try {
      const auto r = hilbert::hilbert_verdict(x["p"], x["q"], x["a"], x["b"], prm);
      bounded = r.bounded ? "1" : "0";
      residual = r.relation_residual;
      if (r.bounded) {
        sharp = try_sharp(x["p"], x["q"], x["a"], x["b"], prm);
        bound = try_bound(x["p"], x["q"], x["a"], x["b"], prm);
      }
    } catch (const DomainError&) {
      bounded = "";
    }
    csv << csv_number(v) << ',' << bounded << ',' << csv_number(sharp) << ','
        << csv_number(bound) << ',' << csv_number(residual) << '\n';
  }
  return csv.str();
}

int bergman_reproduce(const Flags& f, report::Report& rep) {
  const double nu = f.real("nu");
  const double m = f.real("m");
  const double tol = resolve_tol(f, 1e-7);
  const double threshold = f.real("threshold");
  ComplexFunc2D fn;
  fn.eval = [m](double x, double y) {
    const std::complex<double> i(0.0, 1.0);
    return std::pow(i / (std::complex<double>(x, y) + i), m);
  };
  fn.x_hints.decay_exponent = m;
  fn.y_hints.decay_exponent = m;

  json rows = json::array();
  double worst = 0.0;
  std::stringstream ss(f.str("points"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("probe points are x:y pairs, got '" + item + "'");
    const bergman::HalfPlanePoint z{parse_real(item.substr(0, colon)),
                                    parse_real(item.substr(colon + 1))};
    const auto value = bergman::bergman_project(nu, fn, z, tol);
    const auto expected = fn.eval(z.x, z.y);
    const double error = std::abs(value - expected);
    worst = std::max(worst, error);
    rows.push_back({{"x", number(z.x)},
                    {"y", number(z.y)},
                    {"re", number(value.real())},
                    {"im", number(value.imag())},
                    {"expected_re", number(expected.real())},
                    {"expected_im", number(expected.imag())},
                    {"abs_error", number(error)}});
  }
  const bool passed = worst <= threshold;
  rep.result = {{"rows", rows}, {"max_abs_error", number(worst)}, {"passed", passed}};
  rep.tolerances = {{"rows.x", 0},
                    {"rows.y", 0},
                    {"rows.re", tol},
                    {"rows.im", tol},
                    {"rows.expected_re", report::kClosedFormTol},
                    {"rows.expected_im", report::kClosedFormTol},
                    {"rows.abs_error", tol},
                    {"max_abs_error", tol}};
  return passed ? kSuccess : kCheckFailed;
}

json error_json(const char* type, const std::exception& e) {
  return {{"error", {{"type", type}, {"message", e.what()}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for weighted Hilbert-type and Bergman-type operators",
               "oplab"};
  app.require_subcommand(1);
  std::deque<Flags> store;
  auto flags = [&store]() -> Flags& { return store.emplace_back(); };

  auto* verdict = app.add_subcommand("verdict", "boundedness criteria with full arithmetic");
  verdict->require_subcommand(1);
  auto* vh = verdict->add_subcommand("hilbert", "H : L^p_a -> L^q_b");
  Flags& fvh = flags();
  add_tuple(vh, fvh, true);
  auto* vb = verdict->add_subcommand("bergman", "T+, T or P_beta : L^{p,q}_a -> L^{p,r}_b");
  Flags& fvb = flags();
  add_text(vb, fvb, "op", "tplus", "tplus | t | projection");
  add_real(vb, fvb, "p", "2", "inner exponent");
  add_real(vb, fvb, "q", "2", "source outer exponent");
  add_real(vb, fvb, "r", "2", "target outer exponent");
  add_real(vb, fvb, "a", "0", "source weight");
  add_real(vb, fvb, "b", "0", "target weight");
  add_real(vb, fvb, "alpha", "0", "weight exponent on Im z");
  add_real(vb, fvb, "beta", "0", "weight exponent on Im w");
  add_real(vb, fvb, "gamma", "1", "kernel exponent");

  auto* sn = app.add_subcommand("sharp-norm", "exact operator norm in the diagonal case");
  Flags& fsn = flags();
  add_text(sn, fsn, "operator", "hilbert", "hilbert | tplus");
  add_tuple(sn, fsn, false);

  auto* cert = app.add_subcommand("certify", "Schur-test certificate for H : L^p_a -> L^q_b");
  cert->require_subcommand(0, 1);
  Flags& fc = flags();
  add_tuple(cert, fc, true);
  add_text(cert, fc, "d", "", "force d = r - s instead of the grid search");
  add_text(cert, fc, "out", "", "also write the certificate document to this file");
  auto* cv = cert->add_subcommand("verify", "check a certificate document by quadrature");
  Flags& fcv = flags();
  add_text(cv, fcv, "cert", "", "certificate JSON file");
  add_real(cv, fcv, "samples", "100", "number of sample points");
  add_tol(cv, fcv);
  cv->get_option("--cert")->required();

  auto* est = app.add_subcommand("estimate", "apply H to an expression and report norms");
  Flags& fe = flags();
  add_tuple(est, fe, true);
  add_text(est, fe, "expr", "ind(1,2)", "function of x");
  add_text(est, fe, "at", "0.5,1,2", "comma-separated points where H f is reported");
  add_tol(est, fe);

  auto* ext = app.add_subcommand("extremal", "Rayleigh quotients of the truncated-power family");
  Flags& fx = flags();
  add_tuple(ext, fx, false);
  add_text(ext, fx, "xi", "0.5,0.1,0.01,0.001", "comma-separated xi values");
  add_tol(ext, fx);

  auto* dil = app.add_subcommand("dilate", "growth exponent of |H f_R| / |f_R| over R");
  Flags& fd = flags();
  add_tuple(dil, fd, true);
  add_text(dil, fd, "expr", "ind(1,2)", "function of x");
  add_real(dil, fd, "r-min", "0.001", "smallest R");
  add_real(dil, fd, "r-max", "1000", "largest R");
  add_real(dil, fd, "n", "13", "grid points");
  add_tol(dil, fd);

  auto* sw = app.add_subcommand("sweep", "vary one parameter, CSV out");
  Flags& fs = flags();
  add_tuple(sw, fs, true);
  add_text(sw, fs, "param", "gamma", "parameter to vary");
  add_real(sw, fs, "from", "0.5", "first value");
  add_real(sw, fs, "to", "2", "last value");
  add_real(sw, fs, "n", "7", "grid points");
  add_text(sw, fs, "out", "", "write the CSV here and print a JSON summary instead");

  auto* berg = app.add_subcommand("bergman", "half-plane checks");
  berg->require_subcommand(1);
  auto* rp = berg->add_subcommand("reproduce", "P_nu fixes (i/(z+i))^m");
  Flags& fr = flags();
  add_real(rp, fr, "nu", "0", "projection weight");
  add_real(rp, fr, "m", "3", "power of i/(z+i)");
  add_text(rp, fr, "points", "0:1,1:1,-1:0.5,0.5:2,2:0.3", "probe points x:y");
  add_real(rp, fr, "threshold", "1e-4", "largest accepted absolute error");
  add_tol(rp, fr);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kInvalidParameters;
  }

  report::Report rep;
  const auto start = std::chrono::steady_clock::now();
  int code = kSuccess;
  std::optional<std::string> raw;
  try {
    if (vh->parsed()) {
      rep.command = "verdict hilbert";
      rep.input = echo(fvh);
      verdict_hilbert(fvh, rep);
    } else if (vb->parsed()) {
      rep.command = "verdict bergman";
      rep.input = echo(fvb);
      verdict_bergman(fvb, rep);
    } else if (sn->parsed()) {
      rep.command = "sharp-norm";
      rep.input = echo(fsn);
      sharp_norm(fsn, rep);
    } else if (cv->parsed()) {
      rep.command = "certify verify";
      rep.input = echo(fcv);
      code = certify_verify(fcv, rep);
    } else if (cert->parsed()) {
      rep.command = "certify";
      rep.input = echo(fc);
      certify(fc, rep);
    } else if (est->parsed()) {
      rep.command = "estimate";
      rep.input = echo(fe);
      estimate(fe, rep);
    } else if (ext->parsed()) {
      rep.command = "extremal";
      rep.input = echo(fx);
      extremal(fx, rep);
    } else if (dil->parsed()) {
      rep.command = "dilate";
      rep.input = echo(fd);
      dilate(fd, rep);
    } else if (sw->parsed()) {
      rep.command = "sweep";
      rep.input = echo(fs);
      const std::string csv = sweep(fs);
      if (fs.str("out").empty()) {
        raw = csv;
      } else {
        write_file(fs.str("out"), csv);
        rep.result = {{"rows", std::count(csv.begin(), csv.end(), '\n') - 1},
                      {"path", fs.str("out")}};
        rep.tolerances = {{"rows", 0}};
      }
    } else if (rp->parsed()) {
      rep.command = "bergman reproduce";
      rep.input = echo(fr);
      code = bergman_reproduce(fr, rep);
    }
  } catch (const DivergenceError& e) {
    rep.result = error_json("divergence", e);
    rep.result["error"]["endpoint"] =
        e.endpoint() == DivergenceError::Endpoint::Zero ? "zero" : "infinity";
    code = kDivergence;
  } catch (const AccuracyError& e) {
    rep.result = error_json("accuracy", e);
    rep.result["error"]["achieved"] = number(e.achieved());
    rep.result["error"]["requested"] = number(e.requested());
    code = kAccuracy;
  } catch (const ParseError& e) {
    rep.result = error_json("parse", e);
    rep.result["error"]["offset"] = e.offset();
    code = kInvalidParameters;
  } catch (const PreconditionError& e) {
    rep.result = error_json("precondition", e);
    code = kInvalidParameters;
  } catch (const DomainError& e) {
    rep.result = error_json("domain", e);
    code = kInvalidParameters;
  } catch (const InfeasibleError& e) {
    rep.result = error_json("infeasible", e);
    code = kInvalidParameters;
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (raw) {
    out << *raw;
    return code;
  }
  if (rep.result.contains("error")) err << rep.result["error"]["message"].get<std::string>() << '\n';
  out << report::render(rep) << '\n';
  return code;
}

}  // namespace oplab::cli
