#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "topo/engine.hpp"
#include "topo/error.hpp"
#include "topo/graph.hpp"
#include "topo/grid.hpp"
#include "topo/scenario.hpp"
#include "topo/shapes.hpp"
#include "topo/stabilizer.hpp"
#include "topo/topology.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

py::handle topo_error;

topo::LogBase base_from(const std::string& s) {
  if (s == "e") return topo::LogBase::E;
  if (s == "2") return topo::LogBase::Two;
  throw topo::Error(topo::ErrorCode::ValidationError, "log base must be \"e\" or \"2\"");
}

std::string base_name(topo::LogBase b) { return b == topo::LogBase::E ? "e" : "2"; }

topo::JStrategy strategy_from(const std::string& s) {
  if (s == "auto") return topo::JStrategy::Auto;
  if (s == "flood") return topo::JStrategy::FloodFill;
  if (s == "valuation") return topo::JStrategy::Valuation;
  throw topo::Error(topo::ErrorCode::ValidationError,
                    "strategy must be \"auto\", \"flood\" or \"valuation\"");
}

topo::EngineOptions engine_options(int threads, const std::string& strategy) {
  topo::EngineOptions o;
  o.threads = threads;
  o.strategy = strategy_from(strategy);
  return o;
}

py::list hole_list(const std::vector<topo::HoleReport>& holes) {
  py::list out;
  for (const auto& h : holes) {
    py::dict d;
    d["loop"] = h.loop;
    d["c"] = h.c ? py::cast(*h.c) : py::none();
    d["i"] = h.i ? py::cast(*h.i) : py::none();
    d["error"] = h.error;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multipartite information of regions in zero-correlation-length topological phases";

  topo_error = py::exception<topo::Error>(m, "TopoError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const topo::Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(topo_error)(e.what());
      inst.attr("code") = std::string(topo::to_string(e.code()));
      PyErr_SetObject(topo_error.ptr(), inst.ptr());
    }
  });

  py::class_<topo::GridCss>(m, "Grid")
      .def_property_readonly("width", &topo::GridCss::width)
      .def_property_readonly("height", &topo::GridCss::height)
      .def_property_readonly("n_subsystems", &topo::GridCss::n_subsystems)
      .def_property_readonly("name", &topo::GridCss::name)
      .def("label", &topo::GridCss::label, "x"_a, "y"_a)
      .def("to_ascii", [](const topo::GridCss& g) { return topo::to_ascii(g); })
      .def("restricted_to",
           [](const topo::GridCss& g, const std::vector<int>& ids) { return g.restricted_to(ids); },
           "ids"_a)
      .def("__eq__", [](const topo::GridCss& a, const topo::GridCss& b) { return a == b; })
      .def("__repr__", [](const topo::GridCss& g) {
        return "<Grid " + std::to_string(g.width()) + "x" + std::to_string(g.height()) + " N=" +
               std::to_string(g.n_subsystems()) + ">";
      });

  m.def("parse_grid", [](const std::string& text, const std::string& name) {
        return topo::parse_ascii_grid(text, name);
      }, "text"_a, "name"_a = "");

  m.def("union_j", [](const topo::GridCss& g, topo::SubsetMask mask) {
        return topo::boundary_component_count(topo::union_region(g, mask));
      }, "grid"_a, "mask"_a);
  m.def("union_perimeter", [](const topo::GridCss& g, topo::SubsetMask mask) {
        return topo::perimeter_links(topo::union_region(g, mask));
      }, "grid"_a, "mask"_a);
  m.def("adjacency_edges", [](const topo::GridCss& g) { return topo::adjacency_graph(g).edges; });
  m.def("hole_count", [](const topo::GridCss& g) { return topo::find_holes(g).n_h(); });
  m.def("euler_characteristic", &topo::euler_characteristic);
  m.def("annular_loop", &topo::annular_loop);
  m.def("is_annular", &topo::is_annular);

  py::class_<topo::EntropyModel>(m, "EntropyModel")
      .def(py::init([](double d, double alpha, const std::string& base) {
             return topo::EntropyModel(d, alpha, base_from(base));
           }),
           "dimension"_a, "alpha"_a = 0.5, "base"_a = "e")
      .def_static("from_anyons",
                  [](double d, std::vector<double> dims, const std::string& base) {
                    return topo::EntropyModel::from_anyons(d, std::move(dims), base_from(base));
                  },
                  "dimension"_a, "anyon_dims"_a, "base"_a = "e")
      .def_static("from_k_matrix",
                  [](const std::vector<std::vector<long long>>& k, double alpha, const std::string& base) {
                    return topo::EntropyModel(topo::quantum_dimension_from_K(k), alpha, base_from(base));
                  },
                  "k"_a, "alpha"_a = 0.5, "base"_a = "e")
      .def_property_readonly("dimension", &topo::EntropyModel::quantum_dimension)
      .def_property_readonly("alpha", &topo::EntropyModel::alpha)
      .def_property_readonly("base", [](const topo::EntropyModel& e) { return base_name(e.base()); })
      .def_property_readonly("s_topo", &topo::EntropyModel::s_topo)
      .def("entropy", &topo::EntropyModel::entropy, "perimeter"_a, "j"_a)
      .def("with_alpha", &topo::EntropyModel::with_alpha, "alpha"_a);

  m.def("connectivity_count",
        [](const topo::GridCss& g, int threads, const std::string& strategy) {
          return topo::connectivity_count(g, engine_options(threads, strategy)).c_n;
        },
        "grid"_a, "threads"_a = 1, "strategy"_a = "auto");

  m.def("multipartite_information",
        [](const topo::EntropyModel& model, const topo::GridCss& g, int threads,
           const std::string& strategy) {
          auto r = topo::multipartite_information(model, g, engine_options(threads, strategy));
          py::dict d;
          d["n"] = r.n_subsystems;
          d["c_n"] = r.c_n;
          d["i_n"] = r.i_n;
          d["i_n_direct"] = r.i_n_direct;
          d["paths_agree"] = r.paths_agree;
          d["s_topo"] = r.s_topo;
          d["log_base"] = base_name(r.base);
          d["chi"] = r.chi ? py::cast(*r.chi) : py::none();
          d["d_nn"] = r.d_nn;
          d["n_h"] = r.n_h;
          d["holes"] = hole_list(r.holes);
          d["constraint_sum"] = r.constraint_sum;
          return d;
        },
        "model"_a, "grid"_a, "threads"_a = 1, "strategy"_a = "auto");

  m.def("recursion_residual", [](const topo::EntropyModel& model, const topo::GridCss& g) {
        return topo::recursion_check(model, g).residual;
      });
  m.def("subloop_revival", [](const topo::EntropyModel& model, const topo::GridCss& g) {
        auto r = topo::subloop_revival(model, g);
        return py::dict("p"_a = r.p, "q"_a = r.q, "i_p"_a = r.i_p, "i_q"_a = r.i_q,
                        "i_n"_a = r.i_n);
      });
  m.def("hole_constraint", [](const topo::EntropyModel& model, const topo::GridCss& g) {
        auto r = topo::hole_constraint(model, g);
        return py::dict("holes"_a = hole_list(r.holes), "sum"_a = r.sum, "expected"_a = r.expected,
                        "pass"_a = r.pass, "i_n"_a = r.i_n, "chi"_a = r.chi);
      });
  m.def("strong_subadditivity",
        [](const topo::EntropyModel& model, const topo::GridCss& g) {
          return topo::strong_subadditivity_combination(model, g);
        });
  m.def("entanglement_vector",
        [](const topo::EntropyModel& model, const std::vector<topo::GridCss>& family) {
          auto v = topo::entanglement_vector(model, family);
          return py::dict("sizes"_a = v.sizes, "components"_a = v.components, "zero"_a = v.zero);
        });
  m.def("irreducible_correlation_bound",
        [](const topo::EntropyModel& model, const topo::GridCss& g) {
          return topo::irreducible_correlation_bound(model, g);
        });

  m.def("rho",
        [](int v, const std::vector<std::pair<int, int>>& edges) {
          return topo::rho(topo::SimpleGraph(v, edges));
        },
        "v"_a, "edges"_a);
  m.def("sigma_of_css", &topo::sigma_of_css);

  py::enum_<topo::Boundary>(m, "Boundary")
      .value("TORUS", topo::Boundary::Torus)
      .value("PLANAR", topo::Boundary::Planar);

  py::class_<topo::CodeLattice>(m, "CodeLattice")
      .def(py::init<int, int, topo::Boundary>(), "lx"_a, "ly"_a, "boundary"_a)
      .def_property_readonly("n_qubits", &topo::CodeLattice::n_qubits)
      .def("h", &topo::CodeLattice::h)
      .def("v", &topo::CodeLattice::v);

  py::class_<topo::StabilizerState>(m, "StabilizerState")
      .def(py::init([](const topo::CodeLattice& l) { return topo::build_code(l); }), "lattice"_a)
      .def_property_readonly("n_qubits", &topo::StabilizerState::n_qubits)
      .def("entropy_bits",
           [](const topo::StabilizerState& s, const std::vector<int>& q) {
             return topo::entropy_of_qubits(s, q).bits;
           },
           "qubits"_a)
      .def("brute_force_entropy",
           [](const topo::StabilizerState& s, const std::vector<int>& q) {
             return topo::brute_force_entropy(s, q);
           },
           "qubits"_a);

  m.def("rasterize",
        [](const topo::GridCss& g, const topo::CodeLattice& l) {
          auto map = topo::rasterize(g, l);
          py::dict d;
          for (std::size_t i = 0; i < map.names.size(); ++i) d[py::str(map.names[i])] = map.regions[i];
          return d;
        });
  m.def("multipartite_information_exact",
        [](const topo::StabilizerState& s, const topo::CodeLattice& l, const topo::GridCss& g,
           int threads) {
          return topo::multipartite_information_exact(s, topo::rasterize(g, l), threads);
        },
        "state"_a, "lattice"_a, "grid"_a, "threads"_a = 1);

  m.def("run_scenario_file",
        [](const std::filesystem::path& p) {
          auto r = topo::run_scenario_file(p);
          return py::dict("name"_a = r.name, "pass"_a = r.pass, "error"_a = r.error,
                          "report"_a = r.report_json);
        });
  m.def("run_suite",
        [](const std::filesystem::path& dir, int threads) {
          topo::RunOptions o;
          o.threads = threads;
          auto s = topo::run_suite(dir, o);
          return py::dict("failures"_a = s.failures, "summary"_a = topo::summary_json(s));
        },
        "dir"_a, "threads"_a = 1);

  auto shapes = m.def_submodule("shapes", "Builders for standard collections");
  shapes.def("annulus", &topo::shapes::annulus, "n"_a);
  shapes.def("open_chain", &topo::shapes::open_chain, "n"_a);
  shapes.def("annulus_with_island", &topo::shapes::annulus_with_island, "n"_a);
  shapes.def("annulus_with_appendage", &topo::shapes::annulus_with_appendage, "n"_a);
  shapes.def("annulus_with_hole", &topo::shapes::annulus_with_hole, "n"_a, "arc"_a = 0);
  shapes.def("annulus_with_self_handle", &topo::shapes::annulus_with_self_handle, "n"_a, "arc"_a = 0);
  shapes.def("annulus_with_nn_handle", &topo::shapes::annulus_with_nn_handle, "n"_a);
  shapes.def("annulus_with_further_handle", &topo::shapes::annulus_with_further_handle, "n"_a, "r"_a);
  shapes.def("split_annulus", &topo::shapes::split_annulus);
  shapes.def("figure_eight", &topo::shapes::figure_eight);
  shapes.def("hole_lattice", &topo::shapes::hole_lattice);
  shapes.def("star", &topo::shapes::star, "petals"_a);
  shapes.def("random_css", &topo::shapes::random_css, "seed"_a, "n"_a, "width"_a, "height"_a,
             "fill"_a = 0.55);
}
