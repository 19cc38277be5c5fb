#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "topo/engine.hpp"
#include "topo/error.hpp"
#include "topo/graph.hpp"
#include "topo/scenario.hpp"
#include "topo/subsets.hpp"
#include "topo/topology.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 64;

struct Globals {
  std::string log_base = "e";
  double alpha = 0.5;
  double dimension = 2.0;
  bool json = false;
  std::string csv;
  int threads = 1;

  topo::RunOptions run() const {
    topo::RunOptions o;
    o.dimension = dimension;
    o.alpha = alpha;
    o.base = log_base == "2" ? topo::LogBase::Two : topo::LogBase::E;
    o.threads = threads;
    return o;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw topo::Error(topo::ErrorCode::ParseError, p.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw topo::Error(topo::ErrorCode::ValidationError, "cannot write " + path);
  out << body;
}

void print_checks(const topo::ScenarioResult& r) {
  for (const auto& c : r.checks) {
    std::cout << "  " << (c.ok ? "ok   " : "FAIL ") << c.key;
    if (!c.expected.empty()) {
      std::cout << "  expected";
      for (double v : c.expected) std::cout << ' ' << v;
    }
    std::cout << "  actual";
    for (double v : c.actual) std::cout << ' ' << v;
    std::cout << '\n';
  }
  if (!r.error.empty()) std::cout << "  error: " << r.error << '\n';
  std::cout << (r.pass ? "PASS" : "FAIL") << '\n';
}

void print_analytic(const topo::Scenario& s, const topo::RunOptions& o) {
  const topo::EntropyModel model(o.dimension, o.alpha, o.base);
  const auto& css = *s.css;
  topo::InfoReport r = topo::multipartite_information(model, css, {o.strategy, o.threads, false});
  std::cout << s.name << ": N = " << r.n_subsystems << '\n'
            << "  C^N = " << r.c_n << "\n"
            << "  I^N = " << r.i_n << " (" << -r.c_n << " log D)\n"
            << "  direct sum agrees: " << (r.paths_agree ? "yes" : "no") << '\n'
            << "  chi = " << (r.chi ? std::to_string(*r.chi) : std::string("n/a")) << ", d_nn = "
            << r.d_nn << ", n_h = " << r.n_h << '\n';
  for (const auto& h : r.holes) {
    std::cout << "  hole: ";
    if (h.c) {
      for (int i : h.loop) std::cout << topo::label_char(i);
      std::cout << "  I = " << *h.i << " (" << -*h.c << " log D)\n";
    } else {
      std::cout << h.error << '\n';
    }
  }
}

int cmd_analyze(const Globals& g, const std::string& file) {
  const std::string text = slurp(file);
  topo::Scenario s;
  if (looks_like_json(text)) {
    s = topo::parse_scenario(text, fs::path(file).filename().string());
  } else {
    s.name = fs::path(file).stem().string();
    s.css = topo::parse_ascii_grid(text, s.name);
  }
  const topo::RunOptions o = g.run();
  topo::ScenarioResult r = topo::run_scenario(s, o);
  if (!g.csv.empty() && s.css) {
    write_file(g.csv, topo::j_table_csv(topo::SubsetTopology::compute(*s.css, {o.strategy, o.threads})));
  }
  if (g.json) {
    std::cout << r.report_json << '\n';
  } else {
    if (s.kind == topo::ScenarioKind::Analytic && r.error.empty()) print_analytic(s, o);
    else std::cout << s.name << '\n';
    print_checks(r);
  }
  return r.pass ? 0 : 1;
}

int cmd_suite(const Globals& g, const std::string& dir) {
  topo::SuiteSummary sum = topo::run_suite(dir, g.run());
  if (g.json) std::cout << topo::summary_json(sum) << '\n';
  else std::cout << topo::summary_table(sum);
  if (!g.csv.empty()) {
    std::ostringstream os;
    os << "name,file,pass\n";
    for (const auto& r : sum.results) os << r.name << ',' << r.file << ',' << (r.pass ? 1 : 0) << '\n';
    write_file(g.csv, os.str());
  }
  return sum.exit_code();
}

int cmd_rho(const Globals& g, const std::string& file) {
  const topo::SimpleGraph graph = topo::parse_graph(slurp(file));
  const long long r = topo::rho(graph);
  if (g.json) {
    Json j;
    j["schema"] = topo::kReportSchema;
    j["v"] = graph.vertex_count();
    j["e"] = graph.edges().size();
    j["rho"] = r;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "v = " << graph.vertex_count() << ", e = " << graph.edges().size()
              << ", rho = " << r << '\n';
  }
  return 0;
}

int cmd_stabilizer(const Globals& g, const std::string& file) {
  const std::string text = slurp(file);
  const std::string origin = fs::path(file).filename().string();
  Json j = Json::parse(text, nullptr, false);
  topo::Scenario s;
  if (!j.is_discarded() && j.is_object() && j.contains("kind")) {
    s = topo::parse_scenario(text, origin);
  } else {
    s.name = fs::path(file).stem().string();
    s.kind = topo::ScenarioKind::Stabilizer;
    s.lattice = topo::parse_lattice(text, &s.css, origin);
  }
  if (s.kind != topo::ScenarioKind::Stabilizer) {
    throw topo::Error(topo::ErrorCode::ValidationError, origin + ": not a stabilizer scenario");
  }
  topo::ScenarioResult r = topo::run_scenario(s, g.run());
  if (g.json) {
    std::cout << r.report_json << '\n';
  } else {
    Json rep = Json::parse(r.report_json);
    std::cout << s.name << ": " << rep.value("n", 0) << " subsystems on "
              << rep["lattice"].value("qubits", 0) << " qubits\n";
    if (rep.contains("i_n_log2")) std::cout << "  I^N = " << rep["i_n_log2"] << " log 2\n";
    print_checks(r);
  }
  return r.pass ? 0 : 1;
}

int cmd_vector(const Globals& g, const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && e.path().extension() == ".json" && name.front() != '_')
      files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<topo::GridCss> family;
  for (const auto& f : files) {
    topo::Scenario s = topo::load_scenario(f);
    if (!s.css) throw topo::Error(topo::ErrorCode::ValidationError, f.string() + ": no grid");
    family.push_back(std::move(*s.css));
  }
  const topo::RunOptions o = g.run();
  const topo::EntropyModel model(o.dimension, o.alpha, o.base);
  topo::EntanglementVector v = topo::entanglement_vector(model, family, {o.strategy, o.threads, true});
  if (!g.csv.empty()) {
    std::ostringstream os;
    os << "p,component\n";
    for (std::size_t i = 0; i < v.sizes.size(); ++i) os << v.sizes[i] << ',' << v.components[i] << '\n';
    write_file(g.csv, os.str());
  }
  if (g.json) {
    Json j;
    j["schema"] = topo::kReportSchema;
    j["sizes"] = v.sizes;
    j["components"] = v.components;
    j["zero"] = v.zero;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << (v.zero ? "zero vector (all |I^p| vanish)\n" : "");
    for (std::size_t i = 0; i < v.sizes.size(); ++i)
      std::cout << "  p = " << v.sizes[i] << "  " << v.components[i] << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipartite information of subsystem collections in topological phases",
               "topo-mpi"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--log-base", g.log_base, "Entropy units")->check(CLI::IsMember({"e", "2"}));
  app.add_option("--alpha", g.alpha, "Boundary-law coefficient per perimeter link");
  app.add_option("--dimension", g.dimension, "Total quantum dimension D")
      ->check(CLI::Range(1.0, 1e12));
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_option("--csv", g.csv, "Write a CSV table to this path");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 256));

  std::string target;
  auto* analyze = app.add_subcommand("analyze", "Analyze a scenario file or ASCII grid");
  analyze->add_option("file", target)->required();
  auto* suite = app.add_subcommand("suite", "Run every scenario in a directory");
  suite->add_option("dir", target)->required();
  auto* rho = app.add_subcommand("rho", "Graph invariant rho of a graph file");
  rho->add_option("graph-file", target)->required();
  auto* stab = app.add_subcommand("stabilizer", "Exact stabilizer entropies for a lattice file");
  stab->add_option("lattice-file", target)->required();
  auto* vec = app.add_subcommand("vector", "Entanglement vector of an annular family");
  vec->add_option("family-dir", target)->required();
  for (auto* sub : {analyze, suite, rho, stab, vec}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(g, target);
    if (*suite) return cmd_suite(g, target);
    if (*rho) return cmd_rho(g, target);
    if (*stab) return cmd_stabilizer(g, target);
    if (*vec) return cmd_vector(g, target);
  } catch (const topo::Error& e) {
    std::cerr << "topo-mpi: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "topo-mpi: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
