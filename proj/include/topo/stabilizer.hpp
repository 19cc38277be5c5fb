#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topo/grid.hpp"

namespace topo {

// Dense GF(2) matrix, rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool v = true) noexcept;
  void flip(std::size_t r, std::size_t c) noexcept { data_[r * words_ + c / 64] ^= bit(c); }
  std::span<const std::uint64_t> row(std::size_t r) const noexcept {
    return {data_.data() + r * words_, words_};
  }

  // Rank by Gaussian elimination on a private copy.
  std::size_t rank() const;

 private:
  static std::uint64_t bit(std::size_t c) noexcept { return std::uint64_t{1} << (c % 64); }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

// Pure stabilizer state on n qubits: n independent, pairwise commuting
// Pauli generators in (X|Z) layout, X bits in columns [0, n), Z bits in [n, 2n).
class StabilizerState {
 public:
  // Throws ValidationError unless the rows are independent and commute.
  explicit StabilizerState(BitMatrix generators);

  int n_qubits() const noexcept { return n_; }
  const BitMatrix& generators() const noexcept { return g_; }

 private:
  int n_ = 0;
  BitMatrix g_;
};

enum class Boundary { Torus, Planar };

// Square lattice of Lx x Ly vertices with qubits on edges. h(x, y) joins
// vertex (x, y) to (x+1, y), v(x, y) joins (x, y) to (x, y+1). Qubits are
// numbered row by row, h before v at each vertex. The planar lattice keeps
// only edges inside the vertex rectangle (smooth boundary on all sides).
class CodeLattice {
 public:
  // Throws LatticeTooSmall unless Lx, Ly >= 2.
  CodeLattice(int lx, int ly, Boundary boundary);

  int lx() const noexcept { return lx_; }
  int ly() const noexcept { return ly_; }
  Boundary boundary() const noexcept { return boundary_; }
  int n_qubits() const noexcept { return n_; }

  // Qubit id or -1 when the edge is absent.
  int h(int x, int y) const noexcept;
  int v(int x, int y) const noexcept;

  struct Edge {
    int x, y;
    bool horizontal;
  };
  const Edge& edge(int qubit) const { return edges_.at(static_cast<std::size_t>(qubit)); }

  // X on the edges meeting at a vertex; Z around a face.
  const std::vector<std::vector<int>>& stars() const noexcept { return stars_; }
  const std::vector<std::vector<int>>& plaquettes() const noexcept { return plaquettes_; }
  // Z strings along the h edges of row 0 and the v edges of column 0.
  std::vector<std::vector<int>> logical_z() const;

 private:
  int lx_, ly_;
  Boundary boundary_;
  int n_ = 0;
  std::vector<int> h_, v_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> stars_, plaquettes_;
};

// Stars and plaquettes minus one of each redundant product, and on the
// torus the two Z logicals, giving exactly n generators.
StabilizerState build_code(const CodeLattice& lattice);

struct QubitEntropy {
  long long bits = 0;       // S / log 2
  bool full_region = false; // A covered every qubit; S = 0 by purity
};

// Exact entropy of qubit set A. Throws EmptyRegion for an empty set and
// ValidationError for repeated or out-of-range qubits.
QubitEntropy entropy_of_qubits(const StabilizerState& state, std::span<const int> qubits);

inline constexpr int kMaxBruteForceQubits = 12;

// Von Neumann entropy in nats from the dense state vector. Generators must
// each be pure X or pure Z. Throws TooManyQubits above 12 qubits.
double brute_force_entropy(const StabilizerState& state, std::span<const int> qubits);

// Stars acting both inside and outside A.
int cut_star_count(const CodeLattice& lattice, std::span<const int> qubits);

struct QubitRegionMap {
  std::vector<std::string> names;
  std::vector<std::vector<int>> regions;

  int n_subsystems() const noexcept { return static_cast<int>(regions.size()); }
  std::vector<int> union_qubits(SubsetMask mask) const;
};

// Disjointness, range and non-emptiness; on the torus every union of
// subsystems must not wind around a cycle (WindingRegion).
void validate_region_map(const CodeLattice& lattice, const QubitRegionMap& map);

// Cell (x, y) of the grid lands on the plaquette with north-west vertex
// (x + ox, y + oy) and owns that plaquette's north and west edges. Planar
// placements must keep every cell off the outer ring of vertices; torus
// placements must leave a free row and column. Default origin is (1, 1)
// on planar lattices and (0, 0) on the torus.
QubitRegionMap rasterize(const GridCss& css, const CodeLattice& lattice,
                         std::optional<Cell> origin = std::nullopt);

inline constexpr int kMaxExactSubsystems = 12;

// I^N / log 2 from true entropies.
long long multipartite_information_exact(const StabilizerState& state, const QubitRegionMap& map,
                                         int threads = 1);

// Entropy of a union of subsystems in units of log 2.
long long union_entropy_bits(const StabilizerState& state, const QubitRegionMap& map,
                             SubsetMask mask);

}  // namespace topo
