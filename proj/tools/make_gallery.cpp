// Writes the scenario gallery, the annular family, graph files and lattice
// files under the given directory. Expected values are the closed forms,
// not engine output.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "topo/error.hpp"
#include "topo/graph.hpp"
#include "topo/scenario.hpp"
#include "topo/shapes.hpp"
#include "topo/topology.hpp"

namespace fs = std::filesystem;
using topo::Scenario;
using topo::ScenarioKind;

namespace {

int alt(int n) { return n % 2 == 0 ? 1 : -1; }  // (-1)^n

struct Builder {
  Scenario s;

  Builder(std::string name, std::vector<std::string> sources, topo::GridCss css) {
    s.name = std::move(name);
    s.sources = std::move(sources);
    css.set_name(s.name);
    s.css = std::move(css);
  }
  Builder& expect(const std::string& key, double v) {
    s.expected[key] = {{v}, false};
    return *this;
  }
  Builder& expect_list(const std::string& key, std::vector<double> v) {
    s.expected[key] = {std::move(v), true};
    return *this;
  }
  Builder& annulus_values(int n) {
    return expect("c_n", 2 * alt(n - 1)).expect("i_n_over_logD", 2 * alt(n)).expect("annular", 1);
  }
};

void write(const fs::path& path, const std::string& body) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

void save(const fs::path& dir, const Scenario& s) { write(dir / (s.name + ".json"), topo::scenario_to_json(s)); }

Scenario graph_scenario(std::string name, std::vector<std::string> sources, topo::SimpleGraph g,
                        long long rho) {
  Scenario s;
  s.name = std::move(name);
  s.sources = std::move(sources);
  s.kind = ScenarioKind::Graph;
  s.graph = std::move(g);
  s.expected["rho"] = {{static_cast<double>(rho)}, false};
  return s;
}

Scenario lattice_scenario(std::string name, std::vector<std::string> sources, int l,
                          topo::Boundary b, const char* grid, long long i_n,
                          bool ssa = false) {
  Scenario s;
  s.name = std::move(name);
  s.sources = std::move(sources);
  s.kind = ScenarioKind::Stabilizer;
  s.css = topo::parse_ascii_grid(grid, s.name);
  topo::LatticePayload lp;
  lp.lx = lp.ly = l;
  lp.boundary = b;
  s.lattice = lp;
  s.expected["i_n_over_log2"] = {{static_cast<double>(i_n)}, false};
  if (ssa) s.expected["ssa_over_log2"] = {{-2.0}, false};
  return s;
}

constexpr const char* kRing3 = "AAB\nC.B\nCCB\n";
constexpr const char* kRing4 = "AAB\nD.B\nDCC\n";
constexpr const char* kChain3 = "ABC\n";

void gallery(const fs::path& dir) {
  // Plain annuli.
  for (int n = 3; n <= 8; ++n) {
    std::vector<std::string> src{"fig1a"};
    if (n == 5) src = {"fig1a", "fig3a", "fig5a"};
    Builder b(n == 5 ? "fig1a-annulus-N5" : "fig1a-annulus-N" + std::to_string(n), src,
              topo::shapes::annulus(n));
    b.annulus_values(n).expect("chi", 2).expect("n_h", 1).expect("d_nn", n).expect("j_union", 2);
    b.expect_list("per_hole", {2.0 * alt(n)}).expect("constraint_over_logD", 2);
    b.expect("sigma", 0).expect("rho", 0).expect("ssa_over_logD", -2);
    save(dir, b.s);
  }
  // Vanishing family.
  for (int n : {4, 5, 6}) {
    const std::string tag = "-N" + std::to_string(n);
    Builder chain("fig1b-open-chain" + tag, n == 5 ? std::vector<std::string>{"fig1b", "fig5c"}
                                                   : std::vector<std::string>{"fig1b"},
                  topo::shapes::open_chain(n));
    chain.expect("c_n", 0).expect("i_n_over_logD", 0).expect("annular", 0).expect("n_h", 0);
    chain.expect("d_nn", n - 1).expect("chi", 2).expect("sigma", alt(n)).expect("rho", alt(n - 1));
    save(dir, chain.s);

    Builder island("fig1c-island" + tag, {"fig1c"}, topo::shapes::annulus_with_island(n));
    island.expect("c_n", 0).expect("i_n_over_logD", 0).expect("annular", 0).expect("n_h", 1);
    island.expect_list("chi", {}).expect_list("per_hole", {2.0 * alt(n - 1)});
    save(dir, island.s);

    Builder app(n == 5 ? "fig1d-appendage" : "fig1d-appendage" + tag, {"fig1d"},
                topo::shapes::annulus_with_appendage(n));
    app.expect("c_n", 0).expect("i_n_over_logD", 0).expect("annular", 0).expect("d_nn", n);
    save(dir, app.s);
  }
  // Deformations that keep the annular value.
  for (int n : {5, 6}) {
    const std::string tag = "-N" + std::to_string(n);
    auto src = [&](const char* fig2, const char* fig3) {
      return n == 6 ? std::vector<std::string>{fig3} : std::vector<std::string>{fig2};
    };
    Builder hole("punched-hole" + tag, src("fig2a", "fig3b"), topo::shapes::annulus_with_hole(n));
    hole.annulus_values(n).expect("n_h", 2).expect_list("per_hole", {2.0 * alt(n)});
    save(dir, hole.s);
    Builder self("self-handle" + tag, src("fig2a", "fig3b"),
                 topo::shapes::annulus_with_self_handle(n, 1));
    self.annulus_values(n).expect("n_h", 2).expect("ssa_over_logD", -2);
    save(dir, self.s);
    Builder nn("nn-handle" + tag, src("fig2b", "fig3c"), topo::shapes::annulus_with_nn_handle(n));
    nn.annulus_values(n).expect("n_h", 2).expect("d_nn", n);
    save(dir, nn.s);
  }
  // Further-neighbour handles and the loops they create.
  {
    Builder six("fig2c-further-handle-N6", {"fig2c", "fig3d"},
                topo::shapes::annulus_with_further_handle(6, 2));
    six.expect("c_n", 0).expect("i_n_over_logD", 0).expect("n_h", 2).expect("d_nn", 7);
    six.expect_list("per_hole", {2, 2}).expect("constraint_over_logD", 4);
    six.expect_list("subloop_sizes", {4, 4}).expect_list("subloop_over_logD", {2, 2});
    save(dir, six.s);

    topo::GridCss five = topo::shapes::annulus_with_further_handle(5, 1);
    Builder b5("further-handle-N5", {"fig3d"}, five);
    b5.expect("c_n", 0).expect("n_h", 2).expect("constraint_over_logD", 4);
    b5.expect_list("subloop_sizes", {3, 4}).expect_list("subloop_over_logD", {-2, 2});
    save(dir, b5.s);

    const topo::HoleSet holes = topo::find_holes(five);
    std::vector<int> a = topo::loop_around_hole(five, holes.holes[0]);
    std::vector<int> b = topo::loop_around_hole(five, holes.holes[1]);
    if (a.size() > b.size()) std::swap(a, b);
    Builder p("fig3e-subloop-p3", {"fig3e"}, five.restricted_to(a));
    p.annulus_values(3);
    save(dir, p.s);
    Builder q("fig3f-subloop-q4", {"fig3f"}, five.restricted_to(b));
    q.annulus_values(4);
    save(dir, q.s);
  }
  for (int n = 4; n <= 8; ++n) {
    Builder h("further-handle-N" + std::to_string(n) + "-r1", {"fig2c"},
              topo::shapes::annulus_with_further_handle(n, 1));
    h.expect("c_n", 0).expect("n_h", 2).expect("constraint_over_logD", 4).expect("d_nn", n + 1);
    save(dir, h.s);
  }
  // Multi-hole constraint.
  {
    Builder f4("fig4-two-holes", {"fig4"}, topo::shapes::figure_eight());
    f4.expect("c_n", 0).expect("i_n_over_logD", 0).expect("n_h", 2).expect("d_nn", 6);
    f4.expect("chi", 2).expect("j_union", 3).expect_list("per_hole", {-2, -2});
    f4.expect("constraint_over_logD", 4);
    save(dir, f4.s);
    Builder f7("fig7-six-holes", {"fig7"}, topo::shapes::hole_lattice());
    f7.expect("c_n", 0).expect("i_n_over_logD", 0).expect("n_h", 6).expect("d_nn", 23);
    f7.expect("chi", 2).expect("constraint_over_logD", 12);
    save(dir, f7.s);
  }
  // Three parties around one hole, one of them in two pieces.
  {
    Builder lw("split-annulus-N3", {"split-annulus"}, topo::shapes::split_annulus());
    lw.expect("c_n", 2).expect("i_n_over_logD", -2).expect("annular", 0);
    save(dir, lw.s);
  }
  {
    Builder st("star-3", {"graph-bridge"}, topo::shapes::star(3));
    st.expect("c_n", 0).expect("sigma", 1).expect("rho", -1).expect("d_nn", 3);
    save(dir, st.s);
  }
  // Skeleton graphs.
  save(dir, graph_scenario("fig5b-cycle-graph-C5", {"fig5b"}, topo::SimpleGraph::cycle(5), 0));
  save(dir, graph_scenario("fig5d-path-graph-P5", {"fig5d"}, topo::SimpleGraph::path(5), 1));
  for (int n : {3, 8, 12}) {
    save(dir, graph_scenario("cycle-graph-C" + std::to_string(n), {"fig5b"},
                             topo::SimpleGraph::cycle(n), 0));
    save(dir, graph_scenario("path-graph-P" + std::to_string(n), {"fig5d"},
                             topo::SimpleGraph::path(n), alt(n - 1)));
  }
  // Stabilizer cross-checks.
  using topo::Boundary;
  save(dir, lattice_scenario("stab-torus4-annulus-N3", {"fig1a"}, 4, Boundary::Torus, kRing3, -2, true));
  save(dir, lattice_scenario("stab-torus4-annulus-N4", {"fig1a"}, 4, Boundary::Torus, kRing4, 2, true));
  save(dir, lattice_scenario("stab-torus4-chain-N3", {"fig1b"}, 4, Boundary::Torus, kChain3, 0));
  save(dir, lattice_scenario("stab-planar5-annulus-N3", {"fig1a"}, 5, Boundary::Planar, kRing3, -2, true));
  save(dir, lattice_scenario("stab-planar5-annulus-N4", {"fig1a"}, 5, Boundary::Planar, kRing4, 2, true));
  save(dir, lattice_scenario("stab-planar5-chain-N3", {"fig1b"}, 5, Boundary::Planar, kChain3, 0));
  {
    Scenario fig4 = lattice_scenario("stab-torus-fig4", {"fig4"}, 13, Boundary::Torus,
                                     "BBBBBAADDDDD\nBBBBBAADDDDD\nBB...AA...DD\nBB...AA...DD\n"
                                     "CC...AA...EE\nCC...AA...EE\nCCCCCAAEEEEE\nCCCCCAAEEEEE\n",
                                     0);
    save(dir, fig4);
  }

  write(dir / "_coverage.json",
        "{\n  \"require_sources\": [\"fig1a\", \"fig1b\", \"fig1c\", \"fig1d\", \"fig2a\", \"fig2b\", "
        "\"fig2c\", \"fig3a\", \"fig3b\", \"fig3c\", \"fig3d\", \"fig3e\", \"fig3f\", \"fig4\", "
        "\"fig5a\", \"fig5b\", \"fig5c\", \"fig5d\", \"fig7\"]\n}\n");
}

void family(const fs::path& dir) {
  for (int n = 3; n <= 6; ++n) {
    Builder b("annulus-N" + std::to_string(n), {"fig1a"}, topo::shapes::annulus(n));
    b.annulus_values(n);
    save(dir, b.s);
  }
}

void graphs(const fs::path& dir) {
  write(dir / "cycle-C6.txt", "# cycle on six vertices\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
  write(dir / "path-P4.txt", "0 1\n1 2\n2 3\n");
  write(dir / "edge-plus-isolated.txt", "# vertex count line keeps vertex 2\n3\n0 1\n");
  write(dir / "star-K13.json", "{\"v\": 4, \"edges\": [[0, 1], [0, 2], [0, 3]]}\n");
}

void lattices(const fs::path& dir) {
  write(dir / "torus4-annulus-N3.json",
        "{\n  \"Lx\": 4,\n  \"Ly\": 4,\n  \"boundary\": \"torus\",\n"
        "  \"grid\": [\"AAB\", \"C.B\", \"CCB\"]\n}\n");
  write(dir / "planar5-annulus-N4.json",
        "{\n  \"Lx\": 5,\n  \"Ly\": 5,\n  \"boundary\": \"planar\",\n"
        "  \"grid\": [\"AAB\", \"D.B\", \"DCC\"]\n}\n");
  // Same annulus as explicit qubit lists.
  const topo::CodeLattice lat(5, 5, topo::Boundary::Planar);
  const topo::QubitRegionMap m = topo::rasterize(topo::parse_ascii_grid(kRing3), lat);
  std::string body = "{\n  \"Lx\": 5,\n  \"Ly\": 5,\n  \"boundary\": \"planar\",\n  \"regions\": {\n";
  for (std::size_t i = 0; i < m.regions.size(); ++i) {
    body += "    \"" + m.names[i] + "\": [";
    for (std::size_t k = 0; k < m.regions[i].size(); ++k) {
      body += (k ? ", " : "") + std::to_string(m.regions[i][k]);
    }
    body += i + 1 < m.regions.size() ? "],\n" : "]\n";
  }
  body += "  }\n}\n";
  write(dir / "planar5-annulus-N3-regions.json", body);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_gallery <output-dir>\n";
    return 64;
  }
  const fs::path out = argv[1];
  try {
    gallery(out / "gallery");
    family(out / "family");
    graphs(out / "graphs");
    lattices(out / "lattices");
  } catch (const std::exception& e) {
    std::cerr << "make_gallery: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
