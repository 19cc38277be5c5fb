#include "topo/scenario.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "parallel.hpp"
#include "topo/error.hpp"
#include "topo/topology.hpp"

namespace topo {

using Json = nlohmann::ordered_json;

namespace {

const std::set<std::string>& integer_keys() {
  static const std::set<std::string> keys = {
      "c_n",   "i_n_over_logD", "per_hole", "constraint_over_logD", "n_h",
      "d_nn",  "chi",           "rho",      "sigma",                "annular",
      "ssa_over_logD", "subloop_sizes", "subloop_over_logD", "j_union",
      "i_n_over_log2", "ssa_over_log2"};
  return keys;
}

const std::map<ScenarioKind, std::set<std::string>>& keys_by_kind() {
  static const std::map<ScenarioKind, std::set<std::string>> m = {
      {ScenarioKind::Analytic,
       {"c_n", "i_n_over_logD", "per_hole", "constraint_over_logD", "n_h", "d_nn", "chi", "rho",
        "sigma", "annular", "ssa_over_logD", "subloop_sizes", "subloop_over_logD", "j_union"}},
      {ScenarioKind::Stabilizer, {"i_n_over_log2", "ssa_over_log2"}},
      {ScenarioKind::Graph, {"rho"}},
  };
  return m;
}

[[noreturn]] void invalid(const std::string& origin, const std::string& what) {
  throw Error(ErrorCode::ValidationError, origin + ": " + what);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, p.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, origin + ": " + e.what());
  }
}

int get_int(const Json& j, const char* key, const std::string& origin) {
  if (!j.contains(key)) invalid(origin, std::string("missing \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) invalid(origin, std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

GridCss grid_from(const Json& j, const std::string& name, const std::string& origin) {
  try {
    if (j.contains("grid")) {
      const Json& g = j.at("grid");
      std::string text;
      if (g.is_string()) {
        text = g.get<std::string>();
      } else if (g.is_array()) {
        for (const auto& row : g) {
          if (!row.is_string()) invalid(origin, "\"grid\" rows must be strings");
          text += row.get<std::string>();
          text += '\n';
        }
      } else {
        invalid(origin, "\"grid\" must be a string or an array of strings");
      }
      return parse_ascii_grid(text, name);
    }
    if (j.contains("labels")) {
      const int w = get_int(j, "width", origin), h = get_int(j, "height", origin);
      const Json& l = j.at("labels");
      if (!l.is_array()) invalid(origin, "\"labels\" must be an array");
      std::vector<int> labels;
      for (const auto& v : l) {
        if (!v.is_number_integer()) invalid(origin, "\"labels\" entries must be integers");
        labels.push_back(v.get<int>());
      }
      return GridCss::from_labels(w, h, std::move(labels), name);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError && std::string(e.what()).find(origin) != std::string::npos)
      throw;
    throw Error(e.code(), origin + ": " + e.what());
  }
  invalid(origin, "no \"grid\" or \"labels\" payload");
}

Json grid_rows(const GridCss& css) {
  Json rows = Json::array();
  std::istringstream in(to_ascii(css));
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

std::vector<std::string> subsystem_names(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.emplace_back(1, label_char(i));
  return v;
}

Json loop_names(const std::vector<int>& loop) {
  Json a = Json::array();
  for (int i : loop) a.push_back(std::string(1, label_char(i)));
  return a;
}

Json info_json(const InfoReport& r, const GridCss& css, const EntropyModel& m) {
  Json j;
  j["schema"] = kReportSchema;
  j["name"] = css.name();
  j["n"] = r.n_subsystems;
  j["subsystems"] = subsystem_names(r.n_subsystems);
  j["log_base"] = m.base() == LogBase::E ? "e" : "2";
  j["dimension"] = m.quantum_dimension();
  j["alpha"] = m.alpha();
  j["s_topo"] = r.s_topo;
  j["c_n"] = r.c_n;
  j["i_n"] = r.i_n;
  j["i_n_nats"] = static_cast<double>(-r.c_n) * std::log(m.quantum_dimension());
  j["i_n_log2"] = static_cast<double>(-r.c_n) * std::log2(m.quantum_dimension());
  j["i_n_direct"] = r.i_n_direct;
  j["paths_agree"] = r.paths_agree;
  // Subsystems never overlap, so the intersection entropy is identically 0.
  j["overlap_term"] = 0.0;
  j["chi"] = r.chi ? Json(*r.chi) : Json(nullptr);
  j["n_h"] = r.n_h;
  j["d_nn"] = r.d_nn;
  Json holes = Json::array();
  for (const auto& h : r.holes) {
    Json e;
    if (h.c) {
      e["loop"] = loop_names(h.loop);
      e["c"] = *h.c;
      e["i"] = *h.i;
    } else {
      e["loop"] = nullptr;
      e["error"] = h.error;
    }
    holes.push_back(std::move(e));
  }
  j["holes"] = std::move(holes);
  j["constraint_sum"] = r.constraint_sum;
  return j;
}

// Rounds values that are integers up to floating error.
double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) <= kRelTolerance * std::max(1.0, std::abs(r)) ? r : v;
}

bool same(const std::vector<double>& a, const std::vector<double>& e, bool integer) {
  if (a.size() != e.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (integer ? a[i] != e[i]
                : std::abs(a[i] - e[i]) > kRelTolerance * std::max(1.0, std::abs(e[i])))
      return false;
  }
  return true;
}

Json values_json(const std::vector<double>& v, bool list, bool integer) {
  auto one = [&](double x) {
    return integer ? Json(static_cast<long long>(std::llround(x))) : Json(x);
  };
  if (!list && v.size() == 1) return one(v[0]);
  Json a = Json::array();
  for (double x : v) a.push_back(one(x));
  return a;
}

class Checker {
 public:
  explicit Checker(const Scenario& s) : s_(s) {}

  bool wants(const std::string& key) const { return s_.expected.count(key) > 0; }

  void compare(const std::string& key, std::vector<double> actual) {
    const auto& e = s_.expected.at(key);
    Check c;
    c.key = key;
    c.expected = e.values;
    c.actual = std::move(actual);
    c.ok = same(c.actual, c.expected, integer_keys().count(key) > 0);
    checks_.push_back(std::move(c));
  }

  // Internal consistency checks with no expected block entry.
  void require(const std::string& key, bool ok, double actual = 0.0) {
    Check c;
    c.key = key;
    c.expected = {};
    c.actual = {actual};
    c.ok = ok;
    checks_.push_back(std::move(c));
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  const Scenario& s_;
  std::vector<Check> checks_;
};

Json checks_json(const std::vector<Check>& checks, const Scenario* s) {
  Json a = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["key"] = c.key;
    const bool integer = integer_keys().count(c.key) > 0;
    const bool list = s && s->expected.count(c.key) ? s->expected.at(c.key).list : false;
    if (!c.expected.empty()) e["expected"] = values_json(c.expected, list, integer);
    e["actual"] = values_json(c.actual, list, integer);
    e["ok"] = c.ok;
    a.push_back(std::move(e));
  }
  return a;
}

void run_analytic(const Scenario& s, const RunOptions& o, Checker& chk, Json& report) {
  const GridCss& css = *s.css;
  const EntropyModel model(o.dimension, o.alpha, o.base);
  EngineOptions eo{o.strategy, o.threads, false};
  InfoReport r = multipartite_information(model, css, eo);
  report = info_json(r, css, model);
  chk.require("paths_agree", r.paths_agree, r.i_n_direct);

  if (css.n_subsystems() <= kMaxRecursionSubsystems) {
    RecursionCheck rc = recursion_check(model, css, eo);
    const double scale = std::max({1.0, std::abs(rc.lhs), std::abs(rc.rhs)});
    chk.require("recursion", rc.residual <= kRelTolerance * scale, rc.residual);
    report["recursion_residual"] = rc.residual;
  }

  if (chk.wants("c_n")) chk.compare("c_n", {static_cast<double>(r.c_n)});
  if (chk.wants("i_n_over_logD")) chk.compare("i_n_over_logD", {static_cast<double>(-r.c_n)});
  if (chk.wants("j_union")) chk.compare("j_union", {static_cast<double>(r.table.j(css.all_mask()))});
  if (chk.wants("per_hole")) {
    std::vector<double> v;
    for (const auto& h : r.holes)
      if (h.c) v.push_back(static_cast<double>(-*h.c));
    chk.compare("per_hole", v);
  }
  if (chk.wants("constraint_over_logD")) {
    double sum = 0;
    for (const auto& h : r.holes)
      if (h.c) sum += std::abs(static_cast<double>(*h.c));
    chk.compare("constraint_over_logD", {sum});
  }
  if (chk.wants("n_h")) chk.compare("n_h", {static_cast<double>(r.n_h)});
  if (chk.wants("d_nn")) chk.compare("d_nn", {static_cast<double>(r.d_nn)});
  if (chk.wants("chi")) {
    chk.compare("chi", r.chi ? std::vector<double>{static_cast<double>(*r.chi)} : std::vector<double>{});
  }
  if (chk.wants("annular")) chk.compare("annular", {is_annular(css) ? 1.0 : 0.0});
  if (chk.wants("rho")) {
    const long long v = rho(SimpleGraph::from_css(adjacency_graph(css)));
    report["rho"] = v;
    chk.compare("rho", {static_cast<double>(v)});
  }
  if (chk.wants("sigma")) {
    const long long v = sigma_of_css(css);
    report["sigma"] = v;
    chk.compare("sigma", {static_cast<double>(v)});
  }
  if (chk.wants("ssa_over_logD")) {
    // Counted in units of log D with D = e so the combination reads as an integer.
    const EntropyModel unit(std::exp(1.0), o.alpha, LogBase::E);
    const double v = strong_subadditivity_combination(unit, css, eo);
    report["ssa"] = v * model.s_topo();
    chk.compare("ssa_over_logD", {snap(v)});
  }
  if (chk.wants("subloop_sizes") || chk.wants("subloop_over_logD")) {
    const EntropyModel unit(std::exp(1.0), o.alpha, LogBase::E);
    SubloopRevival sr = subloop_revival(unit, css, eo);
    Json sub;
    sub["p"] = sr.p;
    sub["q"] = sr.q;
    sub["loop_p"] = loop_names(sr.loop_p);
    sub["loop_q"] = loop_names(sr.loop_q);
    sub["i_p_over_logD"] = snap(sr.i_p);
    sub["i_q_over_logD"] = snap(sr.i_q);
    report["subloops"] = std::move(sub);
    if (chk.wants("subloop_sizes")) chk.compare("subloop_sizes", {double(sr.p), double(sr.q)});
    if (chk.wants("subloop_over_logD")) {
      chk.compare("subloop_over_logD", {snap(sr.i_p), snap(sr.i_q)});
    }
  }
}

void run_stabilizer(const Scenario& s, const RunOptions& o, Checker& chk, Json& report) {
  const LatticePayload& lp = *s.lattice;
  const CodeLattice lattice(lp.lx, lp.ly, lp.boundary);
  const StabilizerState state = build_code(lattice);
  QubitRegionMap map = lp.map;
  if (s.css) map = rasterize(*s.css, lattice, lp.origin);
  validate_region_map(lattice, map);

  report["schema"] = kReportSchema;
  report["name"] = s.name;
  report["lattice"] = {{"Lx", lp.lx}, {"Ly", lp.ly},
                       {"boundary", lp.boundary == Boundary::Torus ? "torus" : "planar"},
                       {"qubits", lattice.n_qubits()}};
  report["n"] = map.n_subsystems();
  Json ents = Json::object();
  for (int i = 0; i < map.n_subsystems(); ++i) {
    const std::string name = map.names.empty() ? std::string(1, label_char(i))
                                               : map.names[static_cast<std::size_t>(i)];
    ents[name] = entropy_of_qubits(state, map.regions[static_cast<std::size_t>(i)]).bits;
  }
  report["entropy_log2"] = std::move(ents);
  const long long exact = multipartite_information_exact(state, map, o.threads);
  report["i_n_log2"] = exact;

  if (s.css) {
    const long long c = connectivity_count(*s.css, {o.strategy, o.threads, true}).c_n;
    report["analytic_i_n_over_logD"] = -c;
    chk.require("oracle_vs_analytic", exact == -c, static_cast<double>(exact));
  }
  if (chk.wants("i_n_over_log2")) chk.compare("i_n_over_log2", {static_cast<double>(exact)});
  if (chk.wants("ssa_over_log2")) {
    if (!s.css) invalid(s.name, "ssa_over_log2 needs a grid to fix the cyclic order");
    std::vector<int> loop = annular_loop(*s.css);
    const double v = strong_subadditivity_combination(
        [&](SubsetMask m) { return static_cast<double>(union_entropy_bits(state, map, m)); }, loop);
    report["ssa_log2"] = v;
    chk.compare("ssa_over_log2", {v});
  }
}

void run_graph(const Scenario& s, Checker& chk, Json& report) {
  const SimpleGraph& g = *s.graph;
  report["schema"] = kReportSchema;
  report["name"] = s.name;
  report["v"] = g.vertex_count();
  report["e"] = g.edges().size();
  const long long v = rho(g);
  report["rho"] = v;
  if (chk.wants("rho")) chk.compare("rho", {static_cast<double>(v)});
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Analytic: return "analytic";
    case ScenarioKind::Stabilizer: return "stabilizer";
    case ScenarioKind::Graph: return "graph";
  }
  return "analytic";
}

const std::vector<std::string>& expectation_keys() {
  static const std::vector<std::string> keys(integer_keys().begin(), integer_keys().end());
  return keys;
}

LatticePayload parse_lattice_json(const Json& j, std::optional<GridCss>* grid,
                                  const std::string& origin, const std::string& name) {
  LatticePayload lp;
  lp.lx = get_int(j, "Lx", origin);
  lp.ly = get_int(j, "Ly", origin);
  const std::string b = j.value("boundary", std::string("torus"));
  if (b == "torus") lp.boundary = Boundary::Torus;
  else if (b == "planar") lp.boundary = Boundary::Planar;
  else invalid(origin, "\"boundary\" must be \"torus\" or \"planar\"");
  if (j.contains("origin")) {
    const Json& o = j.at("origin");
    if (!o.is_array() || o.size() != 2 || !o[0].is_number_integer() || !o[1].is_number_integer())
      invalid(origin, "\"origin\" must be [x, y]");
    lp.origin = Cell{o[0].get<int>(), o[1].get<int>()};
  }
  if (j.contains("regions")) {
    const Json& r = j.at("regions");
    if (!r.is_object()) invalid(origin, "\"regions\" must map names to qubit lists");
    for (const auto& [k, v] : r.items()) {
      if (!v.is_array()) invalid(origin, "region \"" + k + "\" must be a list of qubit ids");
      std::vector<int> q;
      for (const auto& x : v) {
        if (!x.is_number_integer()) invalid(origin, "region \"" + k + "\" has a non-integer id");
        q.push_back(x.get<int>());
      }
      lp.map.names.push_back(k);
      lp.map.regions.push_back(std::move(q));
    }
  } else if (j.contains("grid") || j.contains("labels")) {
    GridCss css = grid_from(j, name, origin);
    const CodeLattice lattice(lp.lx, lp.ly, lp.boundary);
    lp.map = rasterize(css, lattice, lp.origin);
    if (grid) *grid = std::move(css);
  } else {
    invalid(origin, "lattice needs \"regions\" or \"grid\"");
  }
  return lp;
}

LatticePayload parse_lattice(std::string_view json_text, std::optional<GridCss>* grid,
                             const std::string& origin) {
  Json j = parse_json(json_text, origin);
  if (!j.is_object()) invalid(origin, "top level must be an object");
  LatticePayload lp = parse_lattice_json(j, grid, origin, j.value("name", std::string("lattice")));
  validate_region_map(CodeLattice(lp.lx, lp.ly, lp.boundary), lp.map);
  return lp;
}

Scenario parse_scenario(std::string_view json_text, const std::string& origin) {
  Json j = parse_json(json_text, origin);
  if (!j.is_object()) invalid(origin, "top level must be an object");
  Scenario s;
  if (!j.contains("name") || !j.at("name").is_string()) invalid(origin, "missing string \"name\"");
  s.name = j.at("name").get<std::string>();
  if (j.contains("source")) {
    const Json& src = j.at("source");
    if (src.is_string()) s.sources.push_back(src.get<std::string>());
    else if (src.is_array()) {
      for (const auto& x : src) {
        if (!x.is_string()) invalid(origin, "\"source\" entries must be strings");
        s.sources.push_back(x.get<std::string>());
      }
    } else {
      invalid(origin, "\"source\" must be a string or list of strings");
    }
  }
  const std::string kind = j.value("kind", std::string("analytic"));
  if (kind == "analytic") s.kind = ScenarioKind::Analytic;
  else if (kind == "stabilizer") s.kind = ScenarioKind::Stabilizer;
  else if (kind == "graph") s.kind = ScenarioKind::Graph;
  else invalid(origin, "unknown kind \"" + kind + "\"");

  switch (s.kind) {
    case ScenarioKind::Analytic:
      s.css = grid_from(j, s.name, origin);
      break;
    case ScenarioKind::Stabilizer: {
      try {
        s.lattice = parse_lattice_json(j, &s.css, origin, s.name);
      } catch (const Error& e) {
        if (std::string(e.what()).find(origin) != std::string::npos) throw;
        throw Error(e.code(), origin + ": " + e.what());
      }
      break;
    }
    case ScenarioKind::Graph: {
      if (!j.contains("graph")) invalid(origin, "graph scenario needs \"graph\"");
      try {
        s.graph = parse_graph(j.at("graph").dump());
      } catch (const Error& e) {
        throw Error(e.code(), origin + ": " + e.what());
      }
      break;
    }
  }

  if (j.contains("expected")) {
    const Json& e = j.at("expected");
    if (!e.is_object()) invalid(origin, "\"expected\" must be an object");
    const auto& allowed = keys_by_kind().at(s.kind);
    for (const auto& [k, v] : e.items()) {
      if (!allowed.count(k)) {
        invalid(origin, "expected." + k + " is not a known key for " + kind + " scenarios");
      }
      Expectation x;
      auto number = [&](const Json& n) {
        if (!n.is_number()) invalid(origin, "expected." + k + " must be numeric");
        if (integer_keys().count(k) && !n.is_number_integer())
          invalid(origin, "expected." + k + " must be an integer");
        return n.get<double>();
      };
      if (v.is_array()) {
        x.list = true;
        for (const auto& n : v) x.values.push_back(number(n));
      } else if (v.is_boolean()) {
        x.values.push_back(v.get<bool>() ? 1.0 : 0.0);
      } else if (v.is_null()) {
        x.list = true;  // e.g. chi of a disconnected CSS
      } else {
        x.values.push_back(number(v));
      }
      s.expected.emplace(k, std::move(x));
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.filename().string());
}

std::string scenario_to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  if (s.sources.size() == 1) j["source"] = s.sources[0];
  else if (!s.sources.empty()) j["source"] = s.sources;
  j["kind"] = to_string(s.kind);
  if (s.kind == ScenarioKind::Stabilizer && s.lattice) {
    const auto& lp = *s.lattice;
    j["Lx"] = lp.lx;
    j["Ly"] = lp.ly;
    j["boundary"] = lp.boundary == Boundary::Torus ? "torus" : "planar";
    if (lp.origin) j["origin"] = {lp.origin->x, lp.origin->y};
    if (s.css) {
      j["grid"] = grid_rows(*s.css);
    } else {
      Json r = Json::object();
      for (std::size_t i = 0; i < lp.map.regions.size(); ++i) {
        const std::string n = lp.map.names.empty() ? std::string(1, label_char(static_cast<int>(i)))
                                                   : lp.map.names[i];
        r[n] = lp.map.regions[i];
      }
      j["regions"] = std::move(r);
    }
  } else if (s.kind == ScenarioKind::Graph && s.graph) {
    Json edges = Json::array();
    for (const auto& [a, b] : s.graph->edges()) edges.push_back({a, b});
    j["graph"] = {{"v", s.graph->vertex_count()}, {"edges", std::move(edges)}};
  } else if (s.css) {
    j["grid"] = grid_rows(*s.css);
  }
  if (!s.expected.empty()) {
    Json e = Json::object();
    for (const auto& [k, x] : s.expected) {
      const bool integer = integer_keys().count(k) > 0;
      if (x.list && x.values.empty() && k == "chi") e[k] = nullptr;
      else e[k] = values_json(x.values, x.list, integer);
    }
    j["expected"] = std::move(e);
  }
  return j.dump(2) + "\n";
}

ScenarioResult run_scenario(const Scenario& s, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioResult res;
  res.name = s.name;
  res.sources = s.sources;
  res.kind = s.kind;
  Checker chk(s);
  Json report;
  try {
    switch (s.kind) {
      case ScenarioKind::Analytic: run_analytic(s, options, chk, report); break;
      case ScenarioKind::Stabilizer: run_stabilizer(s, options, chk, report); break;
      case ScenarioKind::Graph: run_graph(s, chk, report); break;
    }
    res.checks = chk.take();
    res.pass = std::all_of(res.checks.begin(), res.checks.end(), [](const Check& c) { return c.ok; });
  } catch (const Error& e) {
    res.error = e.what();
    res.checks = chk.take();
    res.pass = false;
  }
  Json out;
  out["schema"] = kReportSchema;
  out["name"] = s.name;
  out["sources"] = s.sources;
  out["kind"] = to_string(s.kind);
  for (auto& [k, v] : report.items()) {
    if (k != "schema" && k != "name") out[k] = v;
  }
  out["checks"] = checks_json(res.checks, &s);
  if (!res.error.empty()) out["error"] = res.error;
  out["pass"] = res.pass;
  res.report_json = out.dump(2);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

ScenarioResult run_scenario_file(const std::filesystem::path& path, const RunOptions& options) {
  ScenarioResult res;
  try {
    res = run_scenario(load_scenario(path), options);
  } catch (const Error& e) {
    res.name = path.stem().string();
    res.error = e.what();
    res.pass = false;
    Json out;
    out["schema"] = kReportSchema;
    out["name"] = res.name;
    out["error"] = res.error;
    out["pass"] = false;
    res.report_json = out.dump(2);
  }
  res.file = path.filename().string();
  return res;
}

SuiteSummary run_suite(const std::filesystem::path& dir, const RunOptions& options) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::ValidationError, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (!e.is_regular_file() || e.path().extension() != ".json" || name.front() == '_') continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  SuiteSummary sum;
  sum.results.resize(files.size());
  RunOptions inner = options;
  inner.threads = 1;
  detail::parallel_for(files.size(), options.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) sum.results[i] = run_scenario_file(files[i], inner);
  });
  for (const auto& r : sum.results) sum.failures += r.pass ? 0 : 1;

  const auto cov = dir / "_coverage.json";
  if (std::filesystem::exists(cov)) {
    Json c = parse_json(read_file(cov), cov.filename().string());
    std::set<std::string> have;
    for (const auto& r : sum.results)
      have.insert(r.sources.begin(), r.sources.end());
    for (const auto& id : c.value("require_sources", Json::array())) {
      const std::string s = id.get<std::string>();
      if (!have.count(s)) sum.missing_sources.push_back(s);
    }
    sum.failures += static_cast<int>(sum.missing_sources.size());
  }
  return sum;
}

std::string summary_table(const SuiteSummary& summary, bool with_timings) {
  std::ostringstream os;
  std::size_t width = 4;
  for (const auto& r : summary.results) width = std::max(width, r.name.size());
  for (const auto& r : summary.results) {
    os << (r.pass ? "PASS  " : "FAIL  ") << r.name;
    os << std::string(width - r.name.size() + 2, ' ');
    if (with_timings) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%8.3f s", r.seconds);
      os << buf;
    }
    if (!r.error.empty()) {
      os << "  " << r.error;
    } else {
      for (const auto& c : r.checks)
        if (!c.ok) os << "  [" << c.key << " mismatch]";
    }
    os << '\n';
  }
  for (const auto& m : summary.missing_sources) os << "FAIL  coverage: no scenario cites " << m << '\n';
  os << summary.results.size() << " scenarios, " << summary.failures << " failures\n";
  return os.str();
}

std::string summary_json(const SuiteSummary& summary) {
  Json j;
  j["schema"] = kReportSchema;
  Json a = Json::array();
  for (const auto& r : summary.results) {
    Json e;
    e["name"] = r.name;
    e["file"] = r.file;
    e["sources"] = r.sources;
    e["pass"] = r.pass;
    if (!r.error.empty()) e["error"] = r.error;
    Json failed = Json::array();
    for (const auto& c : r.checks)
      if (!c.ok) failed.push_back(c.key);
    e["failed_checks"] = std::move(failed);
    a.push_back(std::move(e));
  }
  j["scenarios"] = std::move(a);
  j["missing_sources"] = summary.missing_sources;
  j["failures"] = summary.failures;
  return j.dump(2);
}

std::string report_to_json(const InfoReport& report, const GridCss& css, const EntropyModel& model) {
  return info_json(report, css, model).dump(2);
}

std::string j_table_csv(const SubsetTopology& table) {
  std::ostringstream os;
  os << "mask,m,J,sign\n";
  const SubsetMask all = (SubsetMask{1} << table.n()) - 1;
  for (SubsetMask q = 1; q <= all; ++q) {
    const int m = std::popcount(q);
    os << q << ',' << m << ',' << table.j(q) << ',' << (m % 2 == 1 ? 1 : -1) << '\n';
  }
  return os.str();
}

}  // namespace topo
