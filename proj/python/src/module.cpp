// Python bindings. Elements cross the boundary as strings in the
// expression grammar, rationals as "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bvk/bv.hpp"
#include "bvk/diffops.hpp"
#include "bvk/linalg.hpp"
#include "bvk/parse.hpp"
#include "bvk/runner.hpp"
#include "bvk/vosa.hpp"

namespace py = pybind11;
using namespace bvk;

namespace {

struct PyAlgebra {
  AlgebraPtr alg;
  int cap = 0;

  Element el(const std::string& s) const { return parse_element(*alg, s); }
  std::vector<Element> els(const std::vector<std::string>& v) const {
    std::vector<Element> out;
    for (const auto& s : v) out.push_back(el(s));
    return out;
  }
  LinOp op(const std::string& s) const { return parse_operator(alg, s).memoized(); }
  std::string fmt(const Element& e) const { return alg->format(e); }
};

Scalar to_scalar(const py::handle& h) {
  std::string s = py::str(h);
  Scalar q(s);
  q.canonicalize();
  return q;
}

std::string report_json(const RunReport& r) { return to_json(r).dump(); }

RunOptions options(int jobs, std::optional<std::uint64_t> seed, std::optional<int> cap) {
  RunOptions o;
  o.jobs = jobs;
  o.seed = seed;
  o.cap = cap;
  return o;
}

}  // namespace

PYBIND11_MODULE(_bvkit, m) {
  m.doc() = "exact checks for BV-type operators";

  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(config_error.ptr(), e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const PreconditionError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<PyAlgebra>(m, "Algebra")
      .def_static("poly", [](int even, int odd, int cap) {
        return PyAlgebra{make_polynomial_superalgebra(even, odd, cap), cap};
      }, py::arg("even"), py::arg("odd"), py::arg("cap"))
      .def_static("bc", [](int cap) { return PyAlgebra{make_bc_system(), cap}; }, py::arg("cap"))
      .def_static("struct_random", [](int dim, std::uint64_t seed) {
        return PyAlgebra{random_structure_algebra(dim, seed), 1};
      }, py::arg("dim"), py::arg("seed"))
      .def_property_readonly("name", [](const PyAlgebra& a) { return a.alg->name(); })
      .def("normalize", [](const PyAlgebra& a, const std::string& s) { return a.fmt(a.el(s)); },
           "parse an element and print it in canonical form")
      .def("multiply", [](const PyAlgebra& a, const std::string& x, const std::string& y) {
        return a.fmt(a.alg->multiply(a.el(x), a.el(y)));
      })
      .def("apply", [](const PyAlgebra& a, const std::string& op, const std::string& x) {
        return a.fmt(a.op(op)(a.el(x)));
      })
      .def("basis", [](const PyAlgebra& a, int bound) {
        std::vector<std::string> out;
        for (const Word& w : a.alg->basis(bound)) out.push_back(a.fmt(Element(w)));
        return out;
      })
      .def("random_element", [](const PyAlgebra& a, std::uint64_t seed, int bound) {
        return a.fmt(random_element(*a.alg, seed, bound));
      })
      .def("phi", [](const PyAlgebra& a, const std::string& op, const std::vector<std::string>& args,
                     bool unital) { return a.fmt(phi_form_multilinear(*a.alg, a.op(op), a.els(args), unital)); },
           py::arg("op"), py::arg("args"), py::arg("unital_adjust") = false)
      .def("phi_koszul", [](const PyAlgebra& a, const std::string& op, const std::vector<std::string>& args) {
        return a.fmt(phi_form_koszul(*a.alg, a.op(op), a.els(args)));
      })
      .def("bracket", [](const PyAlgebra& a, const std::string& delta, const std::string& x, const std::string& y) {
        return a.fmt(bv_bracket(*a.alg, a.op(delta), a.el(x), a.el(y)));
      })
      .def("order", [](const PyAlgebra& a, const std::string& op, int r_max, int bound,
                       std::optional<int> max_total, bool unital) -> py::object {
        auto r = classify_order(*a.alg, a.op(op), r_max, basis_domain(*a.alg, bound, max_total), unital);
        if (!r.order) return py::none();
        return py::int_(*r.order);
      }, py::arg("op"), py::arg("r_max"), py::arg("bound"), py::arg("max_total") = std::nullopt,
         py::arg("unital_adjust") = false);

  m.def("rank", [](const std::vector<std::vector<py::object>>& rows) {
    std::vector<Vec> vs;
    for (const auto& r : rows) {
      Vec v;
      for (const auto& x : r) v.push_back(to_scalar(x));
      vs.push_back(std::move(v));
    }
    return rank(vs);
  }, "rank over the rationals; entries are ints, Fractions or 'p/q' strings");

  m.def("suite_names", &suite_names);
  m.def("run_suite_text", [](const std::string& text, int jobs, std::optional<std::uint64_t> seed,
                             std::optional<int> cap) {
    SuiteSpec s = parse_suite(text);
    py::gil_scoped_release release;
    return report_json(run_suite(s, options(jobs, seed, cap)));
  }, py::arg("text"), py::arg("jobs") = 1, py::arg("seed") = std::nullopt, py::arg("cap") = std::nullopt);
  m.def("run_suite_file", [](const std::string& path, int jobs, std::optional<std::uint64_t> seed,
                             std::optional<int> cap) {
    py::gil_scoped_release release;
    return report_json(run_suite_file(path, options(jobs, seed, cap)));
  }, py::arg("path"), py::arg("jobs") = 1, py::arg("seed") = std::nullopt, py::arg("cap") = std::nullopt);
  m.def("emit_text", [](const std::string& text, int jobs) {
    SuiteSpec s = parse_suite(text);
    py::gil_scoped_release release;
    return emit_text(run_suite(s, options(jobs, std::nullopt, std::nullopt)));
  }, py::arg("text"), py::arg("jobs") = 1);
}
