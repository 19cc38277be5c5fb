#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topo/engine.hpp"
#include "topo/graph.hpp"
#include "topo/grid.hpp"
#include "topo/stabilizer.hpp"

namespace topo {

inline constexpr std::string_view kReportSchema = "topo-mpi/1";

enum class ScenarioKind { Analytic, Stabilizer, Graph };

std::string_view to_string(ScenarioKind kind);

struct LatticePayload {
  int lx = 0;
  int ly = 0;
  Boundary boundary = Boundary::Torus;
  std::optional<Cell> origin;
  QubitRegionMap map;
};

// Expected values in integer units (C^N, multiples of log D or log 2).
// Scalars are stored as one-element lists.
struct Expectation {
  std::vector<double> values;
  bool list = false;
};

struct Scenario {
  std::string name;
  std::vector<std::string> sources;  // figure ids, e.g. "fig1a"
  ScenarioKind kind = ScenarioKind::Analytic;
  std::optional<GridCss> css;
  std::optional<SimpleGraph> graph;
  std::optional<LatticePayload> lattice;
  std::map<std::string, Expectation> expected;
};

// Keys accepted in an "expected" block.
const std::vector<std::string>& expectation_keys();

// Throws ParseError (malformed JSON or grid text) or ValidationError
// (schema problems), both prefixed with `origin` for location.
Scenario parse_scenario(std::string_view json_text, const std::string& origin = "<memory>");
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& s);

// Lattice JSON: {"Lx", "Ly", "boundary", "regions": {"A": [qubits]}} or with
// "grid" (+ optional "origin") instead of "regions".
LatticePayload parse_lattice(std::string_view json_text, std::optional<GridCss>* grid = nullptr,
                             const std::string& origin = "<memory>");

struct RunOptions {
  double dimension = 2.0;
  double alpha = 0.5;
  LogBase base = LogBase::E;
  int threads = 1;
  JStrategy strategy = JStrategy::Auto;
};

struct Check {
  std::string key;
  std::vector<double> expected;
  std::vector<double> actual;
  bool ok = false;
};

struct ScenarioResult {
  std::string name;
  std::string file;
  std::vector<std::string> sources;
  ScenarioKind kind = ScenarioKind::Analytic;
  bool pass = false;
  std::string error;  // set when the scenario could not be run
  std::vector<Check> checks;
  std::string report_json;  // deterministic, pretty-printed
  double seconds = 0.0;
};

ScenarioResult run_scenario(const Scenario& s, const RunOptions& options = {});

// Loads and runs one file; load failures become a failed result.
ScenarioResult run_scenario_file(const std::filesystem::path& path,
                                 const RunOptions& options = {});

struct SuiteSummary {
  std::vector<ScenarioResult> results;
  std::vector<std::string> missing_sources;  // required by _coverage.json but absent
  int failures = 0;
  int exit_code() const { return failures > 255 ? 255 : failures; }
};

// Every *.json file in `dir` not starting with '_' is a scenario, run in
// lexicographic file-name order. An optional _coverage.json lists
// {"require_sources": [...]}; each missing id counts as one failure.
SuiteSummary run_suite(const std::filesystem::path& dir, const RunOptions& options = {});

std::string summary_table(const SuiteSummary& summary, bool with_timings = true);
std::string summary_json(const SuiteSummary& summary);

// InfoReport as JSON with the given display name.
std::string report_to_json(const InfoReport& report, const GridCss& css, const EntropyModel& model);

// mask,m,J,sign rows for every non-empty union.
std::string j_table_csv(const SubsetTopology& table);

}  // namespace topo
