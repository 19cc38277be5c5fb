#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "topo/grid.hpp"
#include "topo/topology.hpp"

namespace topo {

// Undirected simple graph on vertices 0..v-1.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  // Throws ValidationError on self-loops, duplicate edges or ids out of range.
  SimpleGraph(int vertex_count, std::vector<std::pair<int, int>> edges);

  static SimpleGraph path(int n);
  static SimpleGraph cycle(int n);
  static SimpleGraph star(int leaves);
  static SimpleGraph from_css(const CssGraph& g);

  int vertex_count() const noexcept { return v_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

  // Components of the subgraph induced on `vertices` (bitmask).
  int induced_components(SubsetMask vertices) const;

 private:
  int v_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<SubsetMask> adjacency_;
};

inline constexpr int kMaxRhoVertices = 20;

// rho(G) = sum_{i=1}^{v-1} (-1)^i sum over induced subgraphs on i vertices of
// their component count.
long long rho(const SimpleGraph& g);

// Breakdown of rho(P_{n+1}) by the three classes of nontrivial induced
// subgraphs used in the inductive proof for paths: (a) without the new end
// vertex, (b) with the new vertex and its neighbour, (c) with the new vertex
// but not its neighbour. alpha and beta are the partial sums of rho(P_n)
// over subgraphs avoiding vertex n and over nontrivial ones containing it.
struct PathInductionTerms {
  long long type_a = 0;
  long long type_b = 0;
  long long type_c = 0;
  long long alpha = 0;
  long long beta = 0;
};

PathInductionTerms path_induction_terms(int n);

// Partial inclusion-exclusion sum over proper subsets,
//   Sigma = sum_{m=1}^{N-1} (-1)^{m-1} sum_{|Q|=m} J(union Q),
// checked against -rho(adjacency graph). Requires every subsystem to have
// J = 1 and every proper union's J to equal the component count of the
// corresponding induced subgraph; violations raise PreconditionViolated
// naming the subset mask.
long long sigma_of_css(const GridCss& css);

// {"v": int, "edges": [[i, j], ...]} or text with one "i j" pair per line.
// A line holding a single integer sets the vertex count (for isolated
// vertices); '#' starts a comment.
SimpleGraph parse_graph(std::string_view text);

}  // namespace topo
