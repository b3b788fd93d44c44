// Python bindings: words, closures, layer tables, conjugacy and the checks.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parasurf/checks.hpp"

namespace py = pybind11;
using namespace parasurf;

namespace {

py::object to_py(const Int& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

CommutatorConvention conv_of(const std::string& s) { return convention_from_string(s); }

py::dict verdict_dict(const ConjugacyVerdict& v) {
  py::dict d;
  d["kind"] = to_string(v.kind);
  d["witness"] = v.witness ? py::object(py::str(format_word(*v.witness))) : py::object(py::none());
  d["obstructed_layer"] = v.obstructed_layer;
  return d;
}

}  // namespace

PYBIND11_MODULE(_parasurf, m) {
  m.doc() = "Exact computations in free nilpotent groups and one-relator quotients";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<Word>(m, "Word")
      .def(py::init([](const std::string& text, int rank, const std::string& conv) {
             return parse_word(text, rank, conv_of(conv));
           }),
           py::arg("text"), py::arg("rank"), py::arg("convention") = "inverse-first")
      .def_property_readonly("rank", &Word::rank)
      .def("__len__", &Word::length)
      .def("__str__", &format_word)
      .def("__repr__", [](const Word& w) { return "Word('" + format_word(w) + "', " + std::to_string(w.rank()) + ")"; })
      .def("__mul__", [](const Word& a, const Word& b) { return a * b; })
      .def("__eq__", [](const Word& a, const Word& b) { return a == b; })
      .def("inverse", &Word::inverse)
      .def("__pow__", [](const Word& w, std::int64_t n) { return w.pow(n); })
      .def("exponent_sums", [](const Word& w) { return exponent_sums(w); })
      .def("cyclic_length", [](const Word& w) { return cyclic_length(w); })
      .def("is_cyclically_reduced", [](const Word& w) { return is_cyclically_reduced(w); });

  m.def("surface_relator", [](int genus, const std::string& conv) { return surface_relator(genus, conv_of(conv)); },
        py::arg("genus"), py::arg("convention") = "inverse-first");

  m.def("witt_rank", [](int rank, int degree) { return to_py(witt_rank(rank, degree)); });
  m.def("lyndon_words", &lyndon_words);
  m.def("surface_layer_rank", [](int genus, int degree) { return to_py(surface_layer_rank(genus, degree)); });

  m.def("closures_equal", py::overload_cast<const Word&, const Word&, int, int>(&closures_equal),
        py::arg("r1"), py::arg("r2"), py::arg("rank"), py::arg("cls"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "is_member",
      [](const Word& x, const Word& relator, int cls) {
        py::gil_scoped_release release;
        return member(x, NormalClosure(relator, relator.rank(), cls)).member;
      },
      py::arg("x"), py::arg("relator"), py::arg("cls"));

  m.def(
      "layer_invariants",
      [](const Word& relator, int cls) {
        std::vector<LayerInvariant> table;
        {
          py::gil_scoped_release release;
          table = lcs_rank_table(relator, relator.rank(), cls);
        }
        py::list out;
        for (const LayerInvariant& l : table) {
          py::dict d;
          d["degree"] = l.degree;
          d["witt"] = to_py(l.free_baseline);
          d["relation_rank"] = l.relation_rank;
          d["free_rank"] = l.free_rank;
          py::list torsion;
          for (const Int& t : l.torsion) torsion.append(to_py(t));
          d["torsion"] = torsion;
          out.append(d);
        }
        return out;
      },
      py::arg("relator"), py::arg("cls"));

  m.def(
      "decide_conjugacy",
      [](const Word& x, const Word& y, int cls) {
        ConjugacyVerdict v;
        {
          py::gil_scoped_release release;
          v = decide_conjugacy(x, y, x.rank(), cls);
        }
        return verdict_dict(v);
      },
      py::arg("x"), py::arg("y"), py::arg("cls"));

  m.def(
      "paper_suite",
      [](int cls, unsigned threads, int max_class) {
        CheckOptions o;
        o.threads = threads;
        o.max_class = max_class;
        std::vector<CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = cmd_paper_suite(cls, o);
        }
        py::list out;
        for (const CheckReport& r : reports) out.append(json_to_py(r.to_json()));
        return out;
      },
      py::arg("cls") = 4, py::arg("threads") = 0, py::arg("max_class") = 6);
}
