#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "arrowlab/arrow.hpp"
#include "arrowlab/dot.hpp"
#include "arrowlab/equivalence.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace arrowlab;

namespace {

SolveOptions opts(std::optional<std::uint64_t> budget, unsigned workers) {
  return {budget.value_or(kNoBudget), workers};
}

py::object colours(const std::optional<EdgeColouring>& c) {
  if (!c) return py::none();
  py::list out;
  for (Colour x : c->colours()) out.append(static_cast<int>(x));
  return out;
}

EdgeColouring to_colouring(const std::vector<int>& cs, std::size_t q) {
  std::vector<Colour> v;
  for (int x : cs) {
    if (x < 0 || x > 255) throw Error("colour out of range");
    v.push_back(static_cast<Colour>(x));
  }
  return EdgeColouring(q, std::move(v));
}

py::dict stats(const SearchStats& s) {
  py::dict d;
  d["nodes"] = s.nodes;
  d["propagations"] = s.propagations;
  d["subproblems"] = s.subproblems;
  return d;
}

const char* verdict(Verdict v) { return v == Verdict::Arrow ? "arrow" : "not-arrow"; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ramsey arrow search, gadgets and equivalence experiments";
  static py::exception<BudgetExceeded> budget_exc(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      budget_exc(e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
             std::vector<Edge> es;
             for (auto [u, v] : edges) es.emplace_back(u, v);
             return Graph(n, es);
           }),
           py::arg("n"), py::arg("edges") = std::vector<std::pair<Vertex, Vertex>>{})
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::pair<Vertex, Vertex>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("complement", &Graph::complement)
      .def("to_graph6", [](const Graph& g) { return to_graph6(g); })
      .def_static("from_graph6", [](const std::string& s) { return from_graph6(s); })
      .def_static("named",
                  [](const std::string& name) {
                    auto g = named_graph(name);
                    if (!g) throw Error("unknown graph name '" + name + "'");
                    return *g;
                  })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.m()) + ", graph6='" + to_graph6(g) + "')";
      });

  m.def("complete_graph", &complete_graph);
  m.def("cycle_graph", &cycle_graph);
  m.def("path_graph", &path_graph);
  m.def("pendant_clique", &pendant_clique);

  m.def(
      "arrow",
      [](const Graph& host, const Graph& target, std::size_t q, std::optional<std::uint64_t> budget, unsigned workers) {
        py::gil_scoped_release release;
        auto c = arrow(host, target, q, opts(budget, workers));
        py::gil_scoped_acquire acquire;
        py::dict d;
        d["verdict"] = verdict(c.verdict);
        d["witness"] = colours(c.witness);
        d["stats"] = stats(c.stats);
        return d;
      },
      py::arg("host"), py::arg("target"), py::arg("q") = 2, py::arg("budget") = py::none(), py::arg("workers") = 1);

  m.def(
      "is_minimal",
      [](const Graph& host, const Graph& target, std::size_t q, std::optional<std::uint64_t> budget, unsigned workers) {
        auto r = is_minimal(host, target, q, opts(budget, workers));
        py::dict d;
        d["minimal"] = r.minimal;
        d["host"] = verdict(r.host.verdict);
        py::list dels;
        for (const auto& x : r.deletions) dels.append(py::make_tuple(x.edge, verdict(x.certificate.verdict)));
        d["deletions"] = dels;
        return d;
      },
      py::arg("host"), py::arg("target"), py::arg("q") = 2, py::arg("budget") = py::none(), py::arg("workers") = 1);

  m.def(
      "ramsey_number",
      [](const std::vector<std::size_t>& sizes, std::size_t n_max, std::optional<std::uint64_t> budget,
         unsigned workers) {
        auto r = ramsey_number(sizes, n_max, opts(budget, workers));
        py::dict d;
        d["value"] = r.value ? py::cast(*r.value) : py::none();
        d["lower_witness"] = colours(r.lower_witness);
        d["unresolved"] = r.unresolved_reason;
        return d;
      },
      py::arg("sizes"), py::arg("n_max") = 20, py::arg("budget") = py::none(), py::arg("workers") = 1);

  m.def("classical_colouring", [](const std::string& name, std::size_t n) {
    return colours(classical_colouring(name, n));
  });
  m.def("max_kclique_free_subset", &max_kclique_free_subset);
  m.def("is_critical", [](const Graph& g, std::size_t n, std::size_t r, std::size_t k) {
    auto c = is_critical(g, n, r, k);
    py::dict d;
    d["critical"] = c.critical;
    d["threshold"] = c.threshold;
    d["max_free"] = c.max_free;
    d["clique"] = c.clique ? py::cast(*c.clique) : py::none();
    d["free_set"] = c.free_set ? py::cast(*c.free_set) : py::none();
    return d;
  });

  m.def(
      "check_theorem43_predicate",
      [](const Graph& g, std::optional<std::uint64_t> budget) {
        auto c = check_theorem43_predicate(g, opts(budget, 1));
        py::dict d;
        d["arrows_k3"] = c.arrows_k3;
        d["arrows_k3_k2"] = c.arrows_k3_k2;
        d["contains_k6"] = c.contains_k6;
        d["consistent"] = c.consistent;
        return d;
      },
      py::arg("g"), py::arg("budget") = py::none());

  m.def("theorem17_colouring", [](const Graph& g, const std::vector<Vertex>& s, Vertex v) {
    auto r = theorem17_colouring(g, s, v);
    py::dict d;
    d["colouring"] = colours(r.colouring);
    d["mono_triangle"] = r.mono_triangle ? py::cast(*r.mono_triangle) : py::none();
    d["outside_triangle"] = r.outside_triangle;
    return d;
  });

  m.def("focus", [](const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                    const std::vector<std::vector<int>>& cs, std::size_t q) {
    std::vector<std::vector<Colour>> rows;
    for (const auto& row : cs) rows.emplace_back(row.begin(), row.end());
    auto r = focus(a, b, rows, q);
    std::vector<int> cols(r.colour_of_a.begin(), r.colour_of_a.end());
    return py::make_tuple(r.subset, cols);
  });

  m.def(
      "recolour",
      [](const Graph& g, const std::vector<int>& c, std::size_t q, const std::vector<std::size_t>& fam) {
        auto t = recolour_theorem41(g, to_colouring(c, q), CliqueSumFamily(fam), default_inner_provider());
        py::dict d;
        d["colouring"] = colours(t.output);
        d["inner"] = t.inner;
        d["bound"] = t.bound;
        d["witness_source"] = t.witness.source;
        return d;
      },
      py::arg("g"), py::arg("colouring"), py::arg("q"), py::arg("fam"));

  m.def(
      "export_dot",
      [](const Graph& g, std::optional<std::vector<int>> c, std::size_t q) {
        DotAnnotations notes;
        if (c) notes.colouring = to_colouring(*c, q);
        return export_dot(g, notes);
      },
      py::arg("g"), py::arg("colouring") = py::none(), py::arg("q") = 2);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI command; returns (exit code, stdout text, stderr text).");
}
