#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oplab/bergman.hpp"
#include "oplab/cli.hpp"
#include "oplab/errors.hpp"
#include "oplab/funcdsl.hpp"
#include "oplab/hilbert.hpp"
#include "oplab/schur.hpp"
#include "oplab/specfun.hpp"

namespace py = pybind11;
using namespace oplab;

namespace {

py::dict to_dict(const ConditionReport& r) {
  py::list ineq;
  for (const auto& i : r.inequalities) {
    ineq.append(py::dict(py::arg("text") = i.text, py::arg("lhs") = i.lhs,
                         py::arg("rhs") = i.rhs, py::arg("holds") = i.holds));
  }
  return py::dict(py::arg("regime") = r.regime, py::arg("clause") = r.clause,
                  py::arg("verdict") = r.verdict(), py::arg("bounded") = r.bounded,
                  py::arg("relation") = r.relation, py::arg("relation_rhs") = r.relation_rhs,
                  py::arg("relation_residual") = r.relation_residual,
                  py::arg("inequalities") = ineq);
}

py::dict to_dict(const schur::SchurCertificate& c) {
  return py::dict(py::arg("omega") = c.omega, py::arg("t") = c.t, py::arg("r") = c.r,
                  py::arg("s") = c.s, py::arg("d") = c.d, py::arg("M1") = c.M1,
                  py::arg("M2") = c.M2, py::arg("bound") = c.bound,
                  py::arg("first_constant") = c.first_constant,
                  py::arg("second_constant") = c.second_constant,
                  py::arg("limit_case") = c.limit_case);
}

bergman::Selector selector(const std::string& name) {
  if (name == "tplus") return bergman::Selector::TPlus;
  if (name == "t") return bergman::Selector::T;
  if (name == "projection") return bergman::Selector::Projection;
  throw DomainError("unknown operator '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_oplab, m) {
  m.doc() = "Weighted Hilbert-type and Bergman-type operator laboratory";

  auto base = py::register_exception<Error>(m, "OplabError");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<CertificateError>(m, "CertificateError", base.ptr());

  m.def("log_gamma", &specfun::log_gamma, py::arg("x"));
  m.def("gamma", &specfun::gamma, py::arg("x"));
  m.def("beta", &specfun::beta, py::arg("m"), py::arg("n"));

  py::class_<funcdsl::Expr>(m, "Expr")
      .def("__call__", py::overload_cast<double>(&funcdsl::Expr::operator(), py::const_),
           py::arg("x"))
      .def("__call__", py::overload_cast<double, double>(&funcdsl::Expr::operator(), py::const_),
           py::arg("x"), py::arg("y"))
      .def("__str__", &funcdsl::Expr::str)
      .def_property_readonly("uses_y", &funcdsl::Expr::uses_y);
  m.def("parse", [](const std::string& s) { return funcdsl::parse(s); }, py::arg("source"));

  m.def(
      "sharp_norm",
      [](double p, double a, double alpha, double beta, double gamma) {
        return hilbert::sharp_norm({p, a}, {alpha, beta, gamma});
      },
      py::arg("p"), py::arg("a"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  m.def(
      "hilbert_verdict",
      [](double p, double q, double a, double b, double alpha, double beta, double gamma) {
        return to_dict(hilbert::hilbert_verdict(p, q, a, b, {alpha, beta, gamma}));
      },
      py::arg("p"), py::arg("q"), py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("beta"),
      py::arg("gamma"));

  m.def(
      "apply_H",
      [](const std::string& expr, double x, double alpha, double beta, double gamma, double tol) {
        return hilbert::apply_H({alpha, beta, gamma}, funcdsl::parse(expr).to_func1d(), x, tol);
      },
      py::arg("expr"), py::arg("x"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
      py::arg("tol") = quad::kDefaultTol1D);

  m.def(
      "find_certificate",
      [](double p, double q, double a, double b, double alpha, double beta, double gamma,
         std::optional<double> d) {
        return to_dict(schur::find_certificate({p, q, a, b, {alpha, beta, gamma}}, d));
      },
      py::arg("p"), py::arg("q"), py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("beta"),
      py::arg("gamma"), py::arg("d") = py::none());

  m.def("kernel_row_integral", &bergman::kernel_row_integral, py::arg("alpha"), py::arg("y"));

  m.def(
      "tplus_exact_norm",
      [](const std::string& space, double alpha, double beta, double gamma, double a) {
        if (space != "inf" && space != "1") throw DomainError("space must be 'inf' or '1'");
        return bergman::tplus_exact_norm(
            space == "inf" ? bergman::NormCase::Linf : bergman::NormCase::L1,
            {alpha, beta, gamma}, a);
      },
      py::arg("space"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("a") = 0.0);

  m.def(
      "bergman_verdict",
      [](const std::string& op, double p, double q, double r, double a, double b, double alpha,
         double beta, double gamma) {
        bergman::BergmanVerdictRequest req;
        req.op = selector(op);
        req.source = {p, q, a};
        req.target = {p, r, b};
        req.params = {alpha, beta, gamma};
        return to_dict(bergman::bergman_verdict(req));
      },
      py::arg("op"), py::arg("p"), py::arg("q"), py::arg("r"), py::arg("a"), py::arg("b"),
      py::arg("alpha"), py::arg("beta"), py::arg("gamma"));

  m.def(
      "project_power",
      [](double nu, int power, double x, double y, double tol) {
        ComplexFunc2D f;
        f.eval = [power](double u, double v) {
          const std::complex<double> i(0.0, 1.0);
          return std::pow(i / (std::complex<double>(u, v) + i), power);
        };
        f.x_hints.decay_exponent = power;
        f.y_hints.decay_exponent = power;
        return bergman::bergman_project(nu, f, {x, y}, tol);
      },
      py::arg("nu"), py::arg("power"), py::arg("x"), py::arg("y"), py::arg("tol") = 1e-7,
      "P_nu applied to (i/(z+i))^power at z = x + iy.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
