#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padic/json_io.hpp"
#include "padic/parse.hpp"
#include "padic/request.hpp"

namespace py = pybind11;
using namespace padic;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(q.get_str());
}

Rational to_rational(const py::handle& value) {
  if (py::isinstance<py::str>(value))
    return parse_rational(value.cast<std::string>());
  return parse_rational(py::str(value).cast<std::string>());
}

PadicNumber number(const py::object& value, std::int64_t prime, std::int64_t precision) {
  if (py::isinstance<PadicNumber>(value))
    return value.cast<PadicNumber>();
  if (py::hasattr(value, "numerator") && py::hasattr(value, "denominator")) {
    Rational q(Integer(py::str(value.attr("numerator")).cast<std::string>()),
               Integer(py::str(value.attr("denominator")).cast<std::string>()));
    q.canonicalize();
    return PadicNumber::from_rational(q, prime, precision);
  }
  return PadicNumber::from_rational(to_rational(value), prime, precision);
}

PadicPowerSeries polynomial(const std::string& text, std::int64_t prime, std::int64_t precision) {
  const auto coeffs = parse_polynomial(text);
  if (coeffs.empty())
    return PadicPowerSeries::zero(prime);
  return PadicPowerSeries::polynomial(prime, coeffs, precision);
}

BallMeasure measure(const std::string& text, std::int64_t prime, std::int64_t precision) {
  const Json spec = text.rfind("dirac:", 0) == 0 ? Json{{"kind", "dirac"}, {"d", text.substr(6)}}
                    : text == "mu-1"             ? Json{{"kind", "mu_minus_one"}}
                                                 : Json{{"kind", text}};
  return measure_from_json(spec, prime, precision);
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact p-adic arithmetic, integration and propagators";

  static py::exception<Error> error(m, "PadicError", PyExc_ValueError);
  static py::exception<DomainError> domain(m, "DomainError", error.ptr());
  static py::exception<PrecisionError> precision(m, "PrecisionError", error.ptr());
  static py::exception<ConvergenceError> convergence(m, "ConvergenceError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const DomainError& e) {
      PyErr_SetString(domain.ptr(), e.what());
    } catch (const PrecisionError& e) {
      PyErr_SetString(precision.ptr(), e.what());
    } catch (const ConvergenceError& e) {
      PyErr_SetString(convergence.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<PadicNumber>(m, "PadicNumber")
      .def(py::init([](const py::object& value, std::int64_t prime, std::int64_t precision) {
             return number(value, prime, precision);
           }),
           py::arg("value"), py::arg("prime"), py::arg("precision") = 20)
      .def_static("exact_zero", &PadicNumber::exact_zero, py::arg("prime"))
      .def_property_readonly("prime", &PadicNumber::prime)
      .def_property_readonly("valuation",
                             [](const PadicNumber& x) -> std::optional<std::int64_t> {
                               if (x.is_exact_zero())
                                 return std::nullopt;
                               return x.valuation();
                             })
      .def_property_readonly("precision", &PadicNumber::precision)
      .def_property_readonly("absolute_precision",
                             [](const PadicNumber& x) -> std::optional<std::int64_t> {
                               if (x.is_exact_zero())
                                 return std::nullopt;
                               return x.absolute_precision();
                             })
      .def("digits", [](const PadicNumber& x) { return x.digits(); })
      .def("norm", [](const PadicNumber& x) { return fraction(x.norm()); })
      .def("lift", [](const PadicNumber& x) { return fraction(x.lift()); })
      .def("is_zero", &PadicNumber::is_zero)
      .def("to_json", [](const PadicNumber& x) { return to_json(x).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return padic_from_json(Json::parse(text)); })
      .def(-py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(py::self == py::self)
      .def("__repr__", &PadicNumber::to_string);

  m.def("agree", &agree, "x == y modulo the smaller absolute precision");
  m.def("fractional_part", [](const PadicNumber& x) { return fraction(fractional_part(x)); });
  m.def("character_phase",
        [](const PadicNumber& x) { return fraction(complex_character(x).phase); });
  m.def("exp_p", &exp_p, py::arg("x"), py::arg("target_precision"));
  m.def("char_a", &char_a, py::arg("a"), py::arg("x"), py::arg("target_precision"));

  m.def(
      "line_integral",
      [](const std::string& f, const py::object& a, const py::object& b, std::int64_t prime,
         std::int64_t precision) {
        return line_integral(polynomial(f, prime, precision), number(a, prime, precision),
                             number(b, prime, precision));
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("prime"), py::arg("precision") = 20);

  m.def(
      "integrate_json",
      [](const std::string& f, const std::string& measure_text, std::int64_t prime,
         std::int64_t precision, std::int64_t level, std::int64_t target) {
        const auto series = polynomial(f, prime, precision);
        const PadicFunction fn = [series](const PadicNumber& x) { return eval_series(series, x); };
        const auto mu = measure(measure_text, prime, precision);
        const auto report = mu.bounded()
                                ? riemann_integrate(fn, mu, level, target)
                                : volkenborn_integrate(fn, prime, level, target, precision);
        return to_json(report).dump();
      },
      py::arg("f"), py::arg("measure"), py::arg("prime"), py::arg("precision"), py::arg("level"),
      py::arg("target"));

  m.def("haar_unboundedness_witness", [](std::int64_t prime, std::int64_t levels) {
    py::list out;
    for (const auto& q : haar_unboundedness_witness(prime, levels))
      out.append(fraction(q));
    return out;
  });

  m.def(
      "complete_square_step",
      [](std::int64_t k, const PadicNumber& x0, const PadicNumber& xk, const PadicNumber& xk1) {
        const auto s = complete_square_step(k, x0, xk, xk1);
        return py::make_tuple(s.lhs, s.rhs);
      },
      py::arg("k"), py::arg("x0"), py::arg("xk"), py::arg("xk1"));

  m.def(
      "propagator_json",
      [](const std::string& request) {
        return run_propagator(propagator_request_from_json(Json::parse(request))).dump();
      },
      py::arg("request"));
}
