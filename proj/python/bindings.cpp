#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdens/density.hpp"
#include "rdens/divisibility.hpp"
#include "rdens/errors.hpp"
#include "rdens/harness.hpp"
#include "rdens/json_io.hpp"
#include "rdens/kummer.hpp"
#include "rdens/power_oracle.hpp"

namespace py = pybind11;
using namespace rdens;

namespace {

Config make_config(std::uint64_t seed, bool allow_large) {
  Config cfg;
  cfg.seed = seed;
  cfg.allow_large = allow_large;
  return cfg;
}

std::vector<CycElement> parse_gens(const CyclotomicField& field, const std::vector<std::string>& gens) {
  std::vector<CycElement> out;
  for (const auto& g : gens) out.push_back(parse_element(g, field));
  return out;
}

py::object fraction_of(const Rational& q) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

}  // namespace

PYBIND11_MODULE(_rdens, m) {
  m.doc() = "Exact densities for reductions of subgroups of cyclotomic fields";

  auto base = py::register_exception<Error>(m, "RdensError");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base);
  py::register_exception<DependenceError>(m, "DependenceError", base);
  py::register_exception<ResourceError>(m, "ResourceError", base);

  py::class_<CyclotomicField>(m, "Field")
      .def(py::init<std::uint64_t>(), py::arg("conductor"))
      .def_property_readonly("conductor", &CyclotomicField::conductor)
      .def_property_readonly("degree", &CyclotomicField::degree)
      .def_property_readonly("torsion_order", &CyclotomicField::torsion_order)
      .def_property_readonly("modulus",
                             [](const CyclotomicField& f) {
                               std::vector<long> out;
                               for (const auto& c : f.modulus()) out.push_back(c.get_si());
                               return out;
                             })
      .def("__eq__", [](const CyclotomicField& a, const CyclotomicField& b) { return a == b; })
      .def("__repr__", [](const CyclotomicField& f) { return "Field(" + std::to_string(f.conductor()) + ")"; });

  py::class_<CycElement>(m, "Element")
      .def(py::init([](const CyclotomicField& f, const std::string& text) { return parse_element(text, f); }),
           py::arg("field"), py::arg("text"))
      .def_property_readonly("field", &CycElement::field)
      .def_property_readonly("coeffs",
                             [](const CycElement& x) {
                               py::list out;
                               for (const auto& c : x.coeffs()) out.append(fraction_of(c));
                               return out;
                             })
      .def("__add__", [](const CycElement& a, const CycElement& b) { return a + b; })
      .def("__sub__", [](const CycElement& a, const CycElement& b) { return a - b; })
      .def("__mul__", [](const CycElement& a, const CycElement& b) { return a * b; })
      .def("__truediv__", [](const CycElement& a, const CycElement& b) { return a / b; })
      .def("__neg__", [](const CycElement& a) { return -a; })
      .def("__pow__", [](const CycElement& a, long e) { return a.pow(e); })
      .def("__eq__", [](const CycElement& a, const CycElement& b) { return a == b; })
      .def("__str__", &format_element)
      .def("__repr__", [](const CycElement& x) { return "Element(" + format_element(x) + ")"; })
      .def("norm", [](const CycElement& x) { return fraction_of(norm(x)); });

  m.def(
      "lth_root",
      [](const CycElement& a, unsigned ell, std::uint64_t seed) { return lth_root(a, ell, make_config(seed, false)); },
      py::arg("a"), py::arg("ell"), py::arg("seed") = Config{}.seed);
  m.def(
      "power_depth",
      [](const CycElement& a, unsigned ell) {
        auto pd = power_depth(a, ell);
        return py::make_tuple(pd.depth, pd.root);
      },
      py::arg("a"), py::arg("ell"));

  m.def(
      "params_json",
      [](std::uint64_t w, unsigned ell, const std::vector<std::string>& gens, std::uint64_t seed, bool allow_large) {
        const CyclotomicField field(w);
        const Config cfg = make_config(seed, allow_large);
        const auto g = parse_gens(field, gens);
        check_envelope(field, ell, g.size(), cfg);
        return to_json(extract_parameters(field, ell, g, cfg)).dump();
      },
      py::arg("conductor"), py::arg("ell"), py::arg("gens"), py::arg("seed") = Config{}.seed,
      py::arg("allow_large") = false);
  m.def(
      "density_json",
      [](std::uint64_t w, unsigned ell, const std::vector<std::string>& gens, std::uint64_t seed, bool allow_large) {
        const CyclotomicField field(w);
        return to_json(density(field, ell, parse_gens(field, gens), make_config(seed, allow_large))).dump();
      },
      py::arg("conductor"), py::arg("ell"), py::arg("gens"), py::arg("seed") = Config{}.seed,
      py::arg("allow_large") = false);
  m.def(
      "bracket_json",
      [](std::uint64_t w, unsigned ell, const std::vector<std::string>& gens, unsigned terms, std::uint64_t seed) {
        const CyclotomicField field(w);
        return to_json(density_bracket(field, ell, parse_gens(field, gens), terms, make_config(seed, false))).dump();
      },
      py::arg("conductor"), py::arg("ell"), py::arg("gens"), py::arg("terms"), py::arg("seed") = Config{}.seed);
  m.def(
      "kummer_degree",
      [](std::uint64_t w, unsigned ell, const std::vector<std::string>& gens, unsigned m_, unsigned n_) {
        const CyclotomicField field(w);
        const auto g = parse_gens(field, gens);
        check_envelope(field, ell, g.size(), Config{});
        return py::int_(py::str(TowerDegrees(field, ell, g).degree(m_, n_).get_str()));
      },
      py::arg("conductor"), py::arg("ell"), py::arg("gens"), py::arg("m"), py::arg("n"));
  m.def(
      "estimate_json",
      [](std::uint64_t w, unsigned ell, const std::vector<std::string>& gens, std::uint64_t bound,
         const std::string& convention, unsigned jobs, std::uint64_t seed) {
        const CyclotomicField field(w);
        const auto g = parse_gens(field, gens);
        EstimateOptions opt;
        opt.bound = bound;
        opt.convention = parse_convention(convention);
        opt.jobs = jobs;
        py::gil_scoped_release release;
        return to_json(estimate(field, ell, g, opt, make_config(seed, false))).dump();
      },
      py::arg("conductor"), py::arg("ell"), py::arg("gens"), py::arg("bound"), py::arg("convention") = "all",
      py::arg("jobs") = 0, py::arg("seed") = Config{}.seed);
}
