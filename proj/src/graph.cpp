#include "topo/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "topo/error.hpp"
#include "topo/subsets.hpp"

namespace topo {

SimpleGraph::SimpleGraph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : v_(vertex_count) {
  if (vertex_count < 0 || vertex_count > 64) {
    throw Error(ErrorCode::ValidationError, "vertex count must lie in 0..64");
  }
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= v_ || j >= v_) {
      throw Error(ErrorCode::ValidationError,
                  "edge (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
    }
    if (i == j) throw Error(ErrorCode::ValidationError, "self-loop at " + std::to_string(i));
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second) {
      throw Error(ErrorCode::ValidationError,
                  "duplicate edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }
  edges_.assign(seen.begin(), seen.end());
  adjacency_.assign(static_cast<std::size_t>(v_), 0);
  for (auto [i, j] : edges_) {
    adjacency_[static_cast<std::size_t>(i)] |= SubsetMask{1} << j;
    adjacency_[static_cast<std::size_t>(j)] |= SubsetMask{1} << i;
  }
}

SimpleGraph SimpleGraph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return SimpleGraph(n, std::move(e));
}

SimpleGraph SimpleGraph::cycle(int n) {
  if (n < 3) throw Error(ErrorCode::ValidationError, "cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return SimpleGraph(n, std::move(e));
}

SimpleGraph SimpleGraph::star(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return SimpleGraph(leaves + 1, std::move(e));
}

SimpleGraph SimpleGraph::from_css(const CssGraph& g) { return SimpleGraph(g.n_vertices, g.edges); }

int SimpleGraph::induced_components(SubsetMask vertices) const {
  int count = 0;
  SubsetMask left = vertices;
  while (left != 0) {
    ++count;
    SubsetMask frontier = left & (~left + 1);
    left &= ~frontier;
    while (frontier != 0) {
      const int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const SubsetMask next = adjacency_[static_cast<std::size_t>(u)] & left;
      left &= ~next;
      frontier |= next;
    }
  }
  return count;
}

long long rho(const SimpleGraph& g) {
  const int v = g.vertex_count();
  if (v > kMaxRhoVertices) {
    throw Error(ErrorCode::TooManyVertices,
                std::to_string(v) + " vertices, limit " + std::to_string(kMaxRhoVertices));
  }
  if (v < 2) return 0;
  const SubsetMask full = (SubsetMask{1} << v) - 1;
  long long total = 0;
  for (SubsetMask s = 1; s < full; ++s) {
    const int h0 = g.induced_components(s);
    total += (std::popcount(s) % 2 == 0) ? h0 : -h0;
  }
  return total;
}

PathInductionTerms path_induction_terms(int n) {
  if (n < 2 || n + 1 > kMaxRhoVertices) {
    throw Error(ErrorCode::ValidationError, "path induction needs 2 <= n < 20");
  }
  // Vertices 0..n of P_{n+1}; vertex n is the new end, n-1 its neighbour.
  const SimpleGraph big = SimpleGraph::path(n + 1);
  const SimpleGraph small = SimpleGraph::path(n);
  const SubsetMask new_v = SubsetMask{1} << n;
  const SubsetMask nbr = SubsetMask{1} << (n - 1);
  auto sign = [](SubsetMask s) { return std::popcount(s) % 2 == 0 ? 1LL : -1LL; };

  PathInductionTerms t;
  const SubsetMask full_big = (SubsetMask{1} << (n + 1)) - 1;
  for (SubsetMask s = 1; s < full_big; ++s) {
    const long long c = sign(s) * big.induced_components(s);
    if ((s & new_v) == 0) t.type_a += c;
    else if ((s & nbr) != 0) t.type_b += c;
    else t.type_c += c;
  }
  const SubsetMask full_small = (SubsetMask{1} << n) - 1;
  const SubsetMask full_prev = (SubsetMask{1} << (n - 1)) - 1;
  for (SubsetMask s = 1; s < full_small; ++s) {
    const long long c = sign(s) * small.induced_components(s);
    if ((s & nbr) != 0) t.beta += c;
    else if (s != full_prev) t.alpha += c;
  }
  return t;
}

long long sigma_of_css(const GridCss& css) {
  const int n = css.n_subsystems();
  if (n > kMaxRhoVertices) {
    throw Error(ErrorCode::TooManySubsystems,
                std::to_string(n) + " subsystems, limit " + std::to_string(kMaxRhoVertices));
  }
  const SubsetTopology table = SubsetTopology::compute(css);
  const SimpleGraph g = SimpleGraph::from_css(adjacency_graph(css));
  const SubsetMask full = css.all_mask();
  long long sigma = 0;
  for (SubsetMask q = 1; q < full; ++q) {
    const int j = table.j(q);
    const int h0 = g.induced_components(q);
    if (std::popcount(q) == 1 && j != 1) {
      throw Error(ErrorCode::PreconditionViolated,
                  "subsystem mask " + std::to_string(q) + " has J = " + std::to_string(j));
    }
    if (j != h0) {
      throw Error(ErrorCode::PreconditionViolated,
                  "union mask " + std::to_string(q) + " has J = " + std::to_string(j) +
                      " but its induced subgraph has " + std::to_string(h0) + " components");
    }
    sigma += (std::popcount(q) % 2 == 1) ? j : -j;
  }
  const long long expected = -rho(g);
  if (sigma != expected) {
    throw Error(ErrorCode::MismatchBetweenPaths, "Sigma = " + std::to_string(sigma) +
                                                     " but -rho = " + std::to_string(expected));
  }
  return sigma;
}

SimpleGraph parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
      const int v = doc.at("v").get<int>();
      std::vector<std::pair<int, int>> edges;
      for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
          throw Error(ErrorCode::ParseError, "edge entries must be [i, j] pairs");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      return SimpleGraph(v, std::move(edges));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }

  std::istringstream in{std::string(text)};
  std::string line;
  int declared = -1;
  int max_id = -1;
  int line_no = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<long> values;
    long value = 0;
    while (fields >> value) values.push_back(value);
    if (!fields.eof()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": not an integer");
    }
    if (values.empty()) continue;
    if (values.size() == 1) {
      declared = static_cast<int>(values[0]);
    } else if (values.size() == 2) {
      edges.emplace_back(static_cast<int>(values[0]), static_cast<int>(values[1]));
      max_id = std::max({max_id, edges.back().first, edges.back().second});
    } else {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected \"i j\"");
    }
  }
  return SimpleGraph(std::max(declared, max_id + 1), std::move(edges));
}

}  // namespace topo
