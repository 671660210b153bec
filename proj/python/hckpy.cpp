// Python bindings for the core counting, detection and pipeline routines.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hck/avgcase.hpp"
#include "hck/cycle.hpp"
#include "hck/dbcount.hpp"
#include "hck/io.hpp"
#include "hck/oracle.hpp"
#include "hck/weighted.hpp"

namespace py = pybind11;
using namespace hck;

namespace {

RandomSpec make_spec(std::uint64_t b, std::optional<double> mu, std::uint64_t seed) {
    RandomSpec s;
    s.b = b;
    s.mu = mu;
    s.seed = seed;
    s.validate();
    return s;
}

}  // namespace

PYBIND11_MODULE(hckpy, m) {
    m.doc() = "Hypercycle detection and subhypergraph counting";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
    py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init<std::size_t, std::vector<std::size_t>, bool>(), py::arg("n"), py::arg("sizes"),
             py::arg("weighted") = false)
        .def_property_readonly("n", &Hypergraph::n)
        .def_property_readonly("sizes", &Hypergraph::sizes)
        .def_property_readonly("weighted", &Hypergraph::weighted)
        .def("edge_count", &Hypergraph::edge_count)
        .def("edges", &Hypergraph::edges)
        .def("add_edge", &Hypergraph::add_edge, py::arg("edge"), py::arg("weight") = 0)
        .def("has_edge", [](const Hypergraph& g, std::vector<Vertex> e) { return g.has_edge(e); })
        .def("weight", [](const Hypergraph& g, std::vector<Vertex> e) { return g.weight(e); })
        .def("fingerprint", &Hypergraph::fingerprint)
        .def("__eq__", &Hypergraph::operator==);

    py::class_<CircleLayout>(m, "CircleLayout")
        .def_readonly("k", &CircleLayout::k)
        .def_readonly("part_of", &CircleLayout::part_of)
        .def("parts", &CircleLayout::parts);
    m.def("block_layout", &block_layout, py::arg("n_per_part"), py::arg("k"));

    py::class_<PatternGraph>(m, "PatternGraph")
        .def(py::init<std::size_t, const std::vector<std::vector<std::size_t>>&>(), py::arg("k"), py::arg("edges"))
        .def_property_readonly("k", &PatternGraph::k)
        .def("edges", &PatternGraph::edges);
    m.def("triangle_pattern", &triangle_pattern);
    m.def("fig4_pattern", &fig4_pattern);
    m.def("hypercycle_pattern", &hypercycle_pattern, py::arg("u"), py::arg("k"));
    m.def("automorphism_count", &automorphism_count);

    m.def("parse_hypergraph", [](const std::string& s) { return parse_hypergraph(s); });
    m.def("serialize", py::overload_cast<const Hypergraph&>(&serialize));
    m.def("parse_partition", [](const std::string& s, std::size_t n) { return parse_partition(s, n); });

    m.def(
        "gen_circle_layered",
        [](std::size_t n, std::size_t k, std::size_t u, std::uint64_t b, std::optional<double> mu,
           std::uint64_t seed) {
            auto pg = gen_circle_layered(n, k, u, make_spec(b, mu, seed));
            return py::make_tuple(pg.g, pg.layout);
        },
        py::arg("n_per_part"), py::arg("k"), py::arg("u"), py::arg("b") = 2, py::arg("mu") = py::none(),
        py::arg("seed") = 0);
    m.def(
        "gen_kpartite_er",
        [](std::size_t n, const PatternGraph& h, std::uint64_t b, std::uint64_t seed) {
            auto pg = gen_kpartite_er(n, h.k(), h.slots(), make_spec(b, std::nullopt, seed));
            return py::make_tuple(pg.g, pg.layout);
        },
        py::arg("n_per_part"), py::arg("pattern"), py::arg("b") = 2, py::arg("seed") = 0);
    m.def(
        "plant_hypercycle",
        [](const Hypergraph& g, const CircleLayout& l, std::size_t u, std::uint64_t seed) {
            return plant_hypercycle(g, l, u, seed);
        },
        py::arg("g"), py::arg("layout"), py::arg("u"), py::arg("seed") = 0);
    m.def("with_random_weights", &with_random_weights, py::arg("g"), py::arg("lo"), py::arg("hi"),
          py::arg("seed") = 0);

    m.def(
        "count_layered",
        [](const Hypergraph& g, const CircleLayout& l, std::size_t u, const std::string& algo) {
            return count_layered(g, l, u, parse_cycle_algo(algo));
        },
        py::arg("g"), py::arg("layout"), py::arg("u"), py::arg("algo") = "auto");
    m.def(
        "detect_hypercycle",
        [](const Hypergraph& g, std::size_t u, std::size_t k, double delta, std::uint64_t seed,
           const std::string& algo) { return detect_hypercycle(g, u, k, delta, seed, parse_cycle_algo(algo)).found; },
        py::arg("g"), py::arg("u"), py::arg("k"), py::arg("delta") = 0.05, py::arg("seed") = 0,
        py::arg("algo") = "auto");
    m.def(
        "min_hypercycle",
        [](const Hypergraph& g, std::size_t u, std::size_t k, double delta, std::uint64_t seed)
            -> std::optional<Weight> {
            const auto r = min_hypercycle(g, u, k, delta, seed);
            if (r.weight == kInfWeight) return std::nullopt;
            return r.weight;
        },
        py::arg("g"), py::arg("u"), py::arg("k"), py::arg("delta") = 0.05, py::arg("seed") = 0);

    m.def(
        "brute_count_hypercycles",
        [](const Hypergraph& g, std::size_t u, std::size_t k, const CircleLayout* l) {
            return brute_count_hypercycles(g, u, k, l).count;
        },
        py::arg("g"), py::arg("u"), py::arg("k"), py::arg("layout") = nullptr);
    m.def(
        "brute_count_kpartite",
        [](const PatternGraph& h, const Hypergraph& g, const CircleLayout& l) {
            return brute_count_pattern(h, g, PatternMode::k_partite, &l);
        },
        py::arg("pattern"), py::arg("g"), py::arg("layout"));

    m.def(
        "wc2ac",
        [](const Hypergraph& g, const CircleLayout& l, const PatternGraph& h, std::size_t b, double rate,
           double delta, std::uint64_t seed) -> std::optional<std::uint64_t> {
            ErOracle er = make_brute_er_oracle();
            if (rate > 0) er = make_corrupt_er_oracle(er, rate, derive_seed(seed, 1));
            return wc2ac_pipeline(PartiteGraph{g, l}, h, er, b, delta, seed).count;
        },
        py::arg("g"), py::arg("layout"), py::arg("pattern"), py::arg("b") = 2, py::arg("corrupt_rate") = 0.0,
        py::arg("delta") = 0.05, py::arg("seed") = 0);

    m.def(
        "db_count",
        [](const std::string& db, const std::string& q) { return brute_scq(parse_database(db), parse_query(q)); },
        py::arg("db"), py::arg("query"));
    m.def(
        "db_polynomial",
        [](const std::string& db, const std::string& q) {
            return eval_scq_polynomial(parse_database(db), parse_query(q));
        },
        py::arg("db"), py::arg("query"));
    m.def(
        "db_avgcase",
        [](const std::string& db, const std::string& q, double delta, std::uint64_t seed)
            -> std::optional<std::uint64_t> {
            return scq_via_uscq(parse_database(db), parse_query(q), make_brute_uscq_oracle(), delta, seed).value;
        },
        py::arg("db"), py::arg("query"), py::arg("delta") = 0.05, py::arg("seed") = 0);
}
