#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "treekernel/bench.hpp"
#include "treekernel/datagen.hpp"
#include "treekernel/errors.hpp"
#include "treekernel/kernel.hpp"
#include "treekernel/language.hpp"
#include "treekernel/rwta.hpp"
#include "treekernel/series.hpp"
#include "treekernel/st_automaton.hpp"

namespace py = pybind11;
using namespace treekernel;

namespace {

TreeLanguage language_from_strings(const std::vector<std::string>& texts,
                                   const std::string& mode) {
    std::vector<Tree> trees;
    trees.reserve(texts.size());
    for (const std::string& s : texts) trees.push_back(parse_tree(s));
    return TreeLanguage::from_trees(std::move(trees), mode_from_name(mode));
}

py::dict series_to_dict(const TreeSeries& series) {
    py::dict out;
    for (const auto& [tree, coeff] : series.coefficients()) {
        out[py::str(serialize_tree(tree))] = coeff;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_treekernel, m) {
    m.doc() = "SubTree kernels over finite tree languages via root-weighted tree automata";
#ifdef TREEKERNEL_VERSION
    m.attr("__version__") = TREEKERNEL_VERSION;
#endif

    py::register_exception<Error>(m, "TreeKernelError");

    py::class_<Tree>(m, "Tree")
        .def_static("parse", [](const std::string& text) { return parse_tree(text); },
                    py::arg("text"))
        .def_property_readonly("size", &Tree::size)
        .def_property_readonly("depth", &Tree::depth)
        .def_property_readonly("name", &Tree::name)
        .def_property_readonly("arity", &Tree::arity)
        .def("child", &Tree::child, py::arg("index"))
        .def("canonical",
             [](const Tree& t, const std::string& mode) {
                 return canonicalize(t, mode_from_name(mode));
             },
             py::arg("mode") = "unordered")
        .def("__str__", [](const Tree& t) { return serialize_tree(t); })
        .def("__repr__", [](const Tree& t) { return "Tree('" + serialize_tree(t) + "')"; })
        .def("__eq__", [](const Tree& a, const Tree& b) { return a == b; })
        .def("__hash__", [](const Tree& t) { return t.hash(); });

    py::class_<TreeLanguage>(m, "TreeLanguage")
        .def_static("from_strings", &language_from_strings, py::arg("trees"),
                    py::arg("mode") = "ordered")
        .def_property_readonly("mode",
                               [](const TreeLanguage& l) { return std::string(mode_name(l.mode())); })
        .def("__len__", &TreeLanguage::size)
        .def_property_readonly("total_size", &TreeLanguage::total_size)
        .def("to_strings", [](const TreeLanguage& l) {
            std::vector<std::string> out;
            out.reserve(l.size());
            for (const Tree& t : l.trees()) out.push_back(serialize_tree(t));
            return out;
        });

    py::class_<StAutomaton>(m, "StAutomaton")
        .def_static("from_language", &StAutomaton::from_language, py::arg("language"))
        .def_property_readonly("state_count", &StAutomaton::state_count)
        .def("nu", &StAutomaton::nu, py::arg("state"))
        .def("state_tree",
             [](const StAutomaton& a, StateId q) { return serialize_tree(a.state_to_tree(q)); },
             py::arg("state"))
        .def("debug_text", &StAutomaton::debug_text);

    m.def("parse_tree", [](const std::string& text) { return parse_tree(text); },
          py::arg("text"));
    m.def("serialize_tree", &serialize_tree, py::arg("tree"));
    m.def("subtree_set",
          [](const Tree& t) {
              std::vector<std::string> out;
              for (const Tree& s : subtree_set(t)) out.push_back(serialize_tree(s));
              return out;
          },
          py::arg("tree"));
    m.def("subtree_series",
          [](const TreeLanguage& l) { return series_to_dict(subtree_series(l)); },
          py::arg("language"));
    m.def("subtree_kernel",
          [](const TreeLanguage& x, const TreeLanguage& y) { return subtree_kernel(x, y); },
          py::arg("x"), py::arg("y"));
    m.def("brute_force_kernel", &brute_force_kernel, py::arg("x"), py::arg("y"));
    m.def("moschitti_kernel", &moschitti_kernel, py::arg("t1"), py::arg("t2"));

    m.def("hadamard",
          [](const StAutomaton& ax, const StAutomaton& ay) {
              ProductResult r = hadamard_accessible(ax, ay);
              py::list matched;
              for (const MatchedState& ms : r.matched) {
                  matched.append(py::make_tuple(ms.state_x, ms.state_y, ms.weight));
              }
              py::dict out;
              out["kernel_value"] = r.kernel_value;
              out["matched"] = matched;
              out["states_explored"] = r.states_explored;
              return out;
          },
          py::arg("ax"), py::arg("ay"));

    m.def("gram_matrix",
          [](const std::vector<TreeLanguage>& items, const std::string& algorithm) {
              GramMatrix g = gram_matrix(items, algorithm_from_name(algorithm));
              return py::make_tuple(g.labels, g.values);
          },
          py::arg("items"), py::arg("algorithm") = "automata");

    m.def("generate_language",
          [](std::uint32_t alphabet_size, std::uint32_t max_arity, std::uint32_t max_depth,
             std::uint32_t cardinal, std::uint64_t seed, const std::string& mode,
             std::uint64_t max_nodes_per_tree) {
              DatasetConfig cfg;
              cfg.alphabet_size = alphabet_size;
              cfg.max_arity = max_arity;
              cfg.max_depth = max_depth;
              cfg.set_cardinal = cardinal;
              cfg.seed = seed;
              cfg.mode = mode_from_name(mode);
              cfg.max_nodes_per_tree = max_nodes_per_tree;
              return generate_language(cfg);
          },
          py::arg("alphabet_size"), py::arg("max_arity"), py::arg("max_depth"),
          py::arg("cardinal") = 100, py::arg("seed") = 0, py::arg("mode") = "ordered",
          py::arg("max_nodes_per_tree") = 20'000);

    m.def("expand_grid",
          [](const std::string& grid, std::uint64_t seed, const std::string& mode) {
              py::list out;
              for (const DatasetConfig& cfg : expand_grid(grid, seed, mode_from_name(mode))) {
                  py::dict d;
                  d["id"] = cfg.id;
                  d["alphabet_size"] = cfg.alphabet_size;
                  d["max_arity"] = cfg.max_arity;
                  d["max_depth"] = cfg.max_depth;
                  d["cardinal"] = cfg.set_cardinal;
                  d["seed"] = cfg.seed;
                  out.append(d);
              }
              return out;
          },
          py::arg("grid"), py::arg("seed") = 42, py::arg("mode") = "ordered");
}
