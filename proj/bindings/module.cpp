#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "rasym/asymmetry.hpp"
#include "rasym/campaign.hpp"
#include "rasym/checks.hpp"
#include "rasym/errors.hpp"
#include "rasym/generators.hpp"
#include "rasym/graph.hpp"
#include "rasym/permutation.hpp"
#include "rasym/rng.hpp"

namespace py = pybind11;
using namespace rasym;

namespace {

py::object to_fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.numerator(),
                                                           r.denominator());
}

py::object json_to_py(const nlohmann::ordered_json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

std::vector<Edge> edges_from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) edges.emplace_back(u, v);
  return edges;
}

Graph graph_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  return Graph::from_edges(n, edges_from_pairs(pairs));
}

std::vector<std::pair<int, int>> pairs_from_edges(const std::vector<Edge>& edges) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(edges.size());
  for (const Edge& e : edges) pairs.emplace_back(e.u, e.v);
  return pairs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "robust graph asymmetry toolkit";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_pairs), py::arg("n"), py::arg("edges"))
      .def_static("load", &load_edge_list, py::arg("path"))
      .def_static("complete", &Graph::complete, py::arg("n"))
      .def_static("cycle", &Graph::cycle, py::arg("n"))
      .def_static("path", &Graph::path, py::arg("n"))
      .def_static("star", &Graph::star, py::arg("leaves"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("degree", &Graph::degree, py::arg("v"))
      .def("neighbors",
           [](const Graph& g, int v) { return g.neighbors(v); }, py::arg("v"))
      .def("edges", [](const Graph& g) { return pairs_from_edges(g.edges()); })
      .def("aux_edges",
           [](const Graph& g) { return pairs_from_edges(g.aux_edges()); })
      .def("save", &save_edge_list, py::arg("path"))
      .def("content_hash", &Graph::content_hash)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.m()) + ")";
      });

  py::class_<Permutation>(m, "Permutation")
      .def_static("identity", &Permutation::identity, py::arg("n"))
      .def_static("from_mapping", &Permutation::from_mapping, py::arg("mapping"))
      .def_static("transposition", &Permutation::transposition, py::arg("n"),
                  py::arg("u"), py::arg("v"))
      .def_property_readonly("n", &Permutation::n)
      .def_property_readonly("k", &Permutation::k)
      .def("__call__", &Permutation::operator(), py::arg("v"))
      .def("mapping", &Permutation::mapping)
      .def("support", [](const Permutation& p) { return p.support(); })
      .def("inverse", &Permutation::inverse)
      .def("compose", &Permutation::compose, py::arg("other"))
      .def("pair_fixpoints", &Permutation::pair_fixpoints)
      .def("cycle_notation", &Permutation::cycle_notation)
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__repr__",
           [](const Permutation& p) { return "Permutation" + p.cycle_notation(); });

  m.def("dist", [](const Graph& g, const Graph& h) { return to_fraction(dist(g, h)); },
        py::arg("g"), py::arg("h"));
  m.def("dist_perm", &dist_perm, py::arg("g"), py::arg("pi"));
  m.def("apply_perm", &apply_perm, py::arg("g"), py::arg("pi"));
  m.def("covered_edges",
        [](const Graph& g, const std::vector<int>& members) {
          return covered_edges(g, VertexSet(g.n(), members));
        },
        py::arg("g"), py::arg("members"));
  m.def("induced_edge_count",
        [](const Graph& g, const std::vector<int>& members) {
          return induced_edge_count(g, VertexSet(g.n(), members));
        },
        py::arg("g"), py::arg("members"));
  m.def("degree_stats", [](const Graph& g) {
    const DegreeStats stats = degree_stats(g);
    py::dict doc;
    doc["min"] = stats.min;
    doc["max"] = stats.max;
    doc["average"] = to_fraction(stats.average);
    return doc;
  });
  m.def("max_common_neighbors", &max_common_neighbors, py::arg("g"));

  m.def("count_k_perms", [](int n, int k) {
    return py::module_::import("builtins").attr("int")(count_k_perms(n, k).str());
  });
  m.def("derangement_count", [](int k) {
    return py::module_::import("builtins").attr("int")(derangement_count(k).str());
  });
  m.def("enumerate_k_perms", &enumerate_k_perms, py::arg("n"), py::arg("k"));
  m.def("sample_k_perm",
        [](int n, int k, std::uint64_t seed) {
          Rng rng = Rng::stream(seed, "py-sample");
          return sample_k_perm(n, k, rng);
        },
        py::arg("n"), py::arg("k"), py::arg("seed"));

  m.def("gen_gnp",
        [](int n, double p, std::uint64_t seed) { return gen_gnp({n, p, seed}); },
        py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("gen_gnpd",
        [](int n, double p, int d, std::uint64_t seed) {
          return gen_gnpd({n, p, d, seed});
        },
        py::arg("n"), py::arg("p"), py::arg("d"), py::arg("seed"));
  m.def("default_degree_floor", &default_degree_floor, py::arg("n"), py::arg("p"));

  py::class_<SearchParams>(m, "SearchParams")
      .def(py::init([](int restarts, int steps, double cooling, std::uint64_t seed,
                       int jobs) {
             return SearchParams{restarts, steps, cooling, seed, jobs};
           }),
           py::arg("restarts") = SearchParams{}.restarts,
           py::arg("steps") = SearchParams{}.steps,
           py::arg("cooling") = SearchParams{}.cooling, py::arg("seed") = 0,
           py::arg("jobs") = 1)
      .def_readwrite("restarts", &SearchParams::restarts)
      .def_readwrite("steps", &SearchParams::steps)
      .def_readwrite("cooling", &SearchParams::cooling)
      .def_readwrite("seed", &SearchParams::seed)
      .def_readwrite("jobs", &SearchParams::jobs);

  py::class_<DeltaEntry>(m, "DeltaEntry")
      .def_readonly("k", &DeltaEntry::k)
      .def_property_readonly("delta",
                             [](const DeltaEntry& e) { return to_fraction(e.delta); })
      .def_readonly("dist", &DeltaEntry::dist)
      .def_readonly("witness", &DeltaEntry::witness)
      .def_readonly("exact", &DeltaEntry::exact)
      .def("__repr__", [](const DeltaEntry& e) {
        return "DeltaEntry(k=" + std::to_string(e.k) + ", dist=" +
               std::to_string(e.dist) + ", exact=" + (e.exact ? "True" : "False") + ")";
      });

  py::class_<AsymmetryProfile>(m, "AsymmetryProfile")
      .def_readonly("n", &AsymmetryProfile::n)
      .def_readonly("m", &AsymmetryProfile::m)
      .def_readonly("entries", &AsymmetryProfile::entries)
      .def_property_readonly("overall_delta",
                             [](const AsymmetryProfile& p) {
                               return to_fraction(p.overall_delta());
                             })
      .def("all_exact", &AsymmetryProfile::all_exact)
      .def("to_dict",
           [](const AsymmetryProfile& p) { return json_to_py(p.to_json()); })
      .def("to_json_string",
           [](const AsymmetryProfile& p) { return p.to_json().dump(2) + "\n"; });

  m.def("exact_delta_k", &exact_delta_k, py::arg("g"), py::arg("k"),
        py::arg("budget") = kDefaultExactBudget);
  m.def("exact_delta_2", &exact_delta_2, py::arg("g"));
  m.def("heuristic_delta_k", &heuristic_delta_k, py::arg("g"), py::arg("k"),
        py::arg("params") = SearchParams{});
  m.def("exact_profile", &exact_profile, py::arg("g"),
        py::arg("budget") = kDefaultExactBudget,
        py::arg("params") = SearchParams{});
  m.def("is_delta_asymmetric",
        [](const Graph& g, long long num, long long den,
           const AsymmetryProfile& profile) {
          return to_string(is_delta_asymmetric(g, Rational(num, den), profile));
        },
        py::arg("g"), py::arg("delta_num"), py::arg("delta_den"), py::arg("profile"));
  m.def("has_nontrivial_automorphism",
        [](const Graph& g, unsigned long long budget) -> py::object {
          const auto witness = has_nontrivial_automorphism(g, budget);
          if (!witness) return py::none();
          return py::cast(*witness);
        },
        py::arg("g"), py::arg("budget") = kDefaultExactBudget);

  m.def("check_avg_degree",
        [](const Graph& g, double p, int d, double slack) {
          return json_to_py(check_avg_degree(g, p, d, slack).to_json());
        },
        py::arg("g"), py::arg("p"), py::arg("d"), py::arg("slack") = 5.0);
  m.def("check_common_neighbors", [](const Graph& g) {
    return json_to_py(check_common_neighbors(g).to_json());
  });
  m.def("check_small_set_density",
        [](const Graph& g, int size_limit, long long node_budget) {
          return json_to_py(check_small_set_density(g, size_limit, node_budget).to_json());
        },
        py::arg("g"), py::arg("size_limit"), py::arg("node_budget") = 10'000'000);
  m.def("mc_covered_edges",
        [](int n, double p, int k, long long trials, std::uint64_t seed) {
          return json_to_py(mc_covered_edges(n, p, k, trials, seed).to_json());
        },
        py::arg("n"), py::arg("p"), py::arg("k"), py::arg("trials"), py::arg("seed"));
  m.def("mc_placement_expectation",
        [](int n, int k, int m_s, long long trials, const Permutation& pi,
           std::uint64_t seed) {
          return json_to_py(
              mc_placement_expectation({n, k, m_s, trials}, pi, seed).to_json());
        },
        py::arg("n"), py::arg("k"), py::arg("m_s"), py::arg("trials"), py::arg("pi"),
        py::arg("seed"));
  m.def("placement_exact_sweep", [](int max_pairs) {
    return json_to_py(placement_exact_sweep(max_pairs).to_json());
  }, py::arg("max_pairs") = 12);
  m.def("mc_edge_probability",
        [](int n, double p, int d, const std::vector<std::pair<int, int>>& forced,
           std::pair<int, int> e, long long target, std::uint64_t seed,
           long long cap) {
          return json_to_py(mc_edge_probability({n, p, d, 0},
                                                edges_from_pairs(forced),
                                                Edge(e.first, e.second), target,
                                                seed, cap)
                                .to_json());
        },
        py::arg("n"), py::arg("p"), py::arg("d"), py::arg("forced"), py::arg("e"),
        py::arg("target_conditional") = 1000, py::arg("seed") = 0,
        py::arg("trial_cap") = 1'000'000);
  m.def("check_small_k_bound",
        [](const Graph& g, double p, int d, int k, long long samples,
           std::uint64_t seed) {
          return json_to_py(check_small_k_bound(g, p, d, k, samples, seed).to_json());
        },
        py::arg("g"), py::arg("p"), py::arg("d"), py::arg("k"), py::arg("samples"),
        py::arg("seed"));
}
