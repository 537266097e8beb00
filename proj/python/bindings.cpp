#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "slopecert/autgroup.hpp"
#include "slopecert/cli.hpp"
#include "slopecert/destabilize.hpp"
#include "slopecert/errors.hpp"
#include "slopecert/futaki.hpp"

namespace py = pybind11;
using namespace slopecert;

namespace {

// Rationals cross the boundary as canonical "num/den" strings; the Python
// package turns them into fractions.Fraction.

py::dict describe(const std::string& text) {
  const auto p = parse_presentation(text);
  const auto norm = normalize(p);
  py::dict d;
  d["presentation"] = pretty_print(p);
  d["picard_rank"] = p.picard_rank();
  d["basis"] = p.lattice()->labels();
  std::vector<std::string> k;
  for (const auto& c : p.canonical().coeffs()) k.push_back(to_string(c));
  d["canonical"] = k;
  py::list tracked;
  for (const auto& t : p.tracked()) {
    tracked.append(py::make_tuple(t.tag().str(), to_string(intersect(t.cls(), t.cls())), t.genus()));
  }
  d["tracked"] = tracked;
  d["normalized"] = pretty_print(norm.presentation);
  d["minimal_polystable"] = norm.minimal_polystable;
  return d;
}

py::object run_destabilize(const std::string& text, unsigned lambda_depth, unsigned epsilon_depth) {
  const auto verdict = destabilize(parse_presentation(text), {lambda_depth, epsilon_depth});
  if (const auto* cert = std::get_if<Certificate>(&verdict)) return py::str(emit(*cert));
  return py::none();
}

py::tuple run_verify(const std::string& document) {
  try {
    const auto report = verify(load(document));
    return py::make_tuple(report.accepted, report.failed_check, report.detail);
  } catch (const ParseError& e) {
    return py::make_tuple(false, std::string("schema"), std::string(e.what()));
  }
}

std::string df(unsigned n, const std::string& a, const std::string& b, const std::string& lambda,
               bool oracle) {
  const auto in = SlopeInput::hirzebruch(n, parse_rational(a), parse_rational(b));
  const Rational l = parse_rational(lambda);
  return to_string(oracle ? df_total_space_oracle(TestConfigModel::from_slope_input(in), l)
                          : df_slope(in, l));
}

py::object destabilizing_lambda(unsigned n, const std::string& a, const std::string& b,
                                unsigned depth) {
  const auto result = find_destabilizing_lambda(
      SlopeInput::hirzebruch(n, parse_rational(a), parse_rational(b)), depth);
  if (!result.destabilizer) return py::none();
  return py::make_tuple(to_string(result.destabilizer->lambda), to_string(result.destabilizer->df));
}

std::string reductivity(const std::string& text,
                        const std::optional<std::vector<std::size_t>>& schedule) {
  return matsushima_verdict(parse_presentation(text), schedule).to_json();
}

std::vector<std::tuple<std::string, std::string, std::string>> scan(unsigned n,
                                                                    const std::string& range,
                                                                    unsigned grid,
                                                                    unsigned depth) {
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& r : cli::scan_grid(n, parse_rational(range), grid, depth)) {
    out.emplace_back(to_string(r.t), to_string(r.lambda_star), to_string(r.df_min));
  }
  return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact K-instability certificates for rational surfaces";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<Unsupported>(m, "Unsupported", PyExc_RuntimeError);

  m.def("describe", &describe, py::arg("presentation"));
  m.def("destabilize", &run_destabilize, py::arg("presentation"),
        py::arg("lambda_depth") = kDefaultLambdaDepth, py::arg("epsilon_depth") = 64u,
        "Certificate JSON, or None for P2 and F(0).");
  m.def("verify", &run_verify, py::arg("document"));
  m.def("df", &df, py::arg("n"), py::arg("a"), py::arg("b"), py::arg("lam"),
        py::arg("oracle") = false);
  m.def("endpoint_df", [](unsigned n, const std::string& a, const std::string& b) {
    return to_string(hirzebruch_endpoint_df(n, parse_rational(a), parse_rational(b)));
  });
  m.def("find_destabilizing_lambda", &destabilizing_lambda, py::arg("n"), py::arg("a"),
        py::arg("b"), py::arg("depth") = kDefaultLambdaDepth);
  m.def("reductivity", &reductivity, py::arg("presentation"), py::arg("schedule") = py::none());
  m.def("scan", &scan, py::arg("n"), py::arg("range"), py::arg("grid"),
        py::arg("depth") = kDefaultLambdaDepth, py::call_guard<py::gil_scoped_release>());
  m.def("run_cli", &run_cli, py::arg("args"));
}
