#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace topo {

inline constexpr int kOutside = -1;

// Bitmask over subsystem ids 0..N-1. Enumeration code never exceeds 24 ids.
using SubsetMask = std::uint64_t;

struct Cell {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Set of cells of a width x height grid, stored as a row-major bitset.
class Region {
 public:
  Region() = default;
  Region(int width, int height);

  static Region from_cells(int width, int height, std::span<const Cell> cells);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  // Out-of-bounds coordinates are never contained.
  bool contains(int x, int y) const noexcept;
  bool contains(Cell c) const noexcept { return contains(c.x, c.y); }
  void insert(int x, int y);
  void erase(int x, int y);

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  std::vector<Cell> cells() const;

  Region& operator|=(const Region& other);
  Region& operator&=(const Region& other);
  Region complement() const;

  friend Region operator|(Region a, const Region& b) { return a |= b; }
  friend Region operator&(Region a, const Region& b) { return a &= b; }
  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  void check_same_shape(const Region& other) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint64_t> words_;
};

struct GridLimits {
  std::size_t max_cells = std::size_t{1} << 20;
};

// A collection of subsystems drawn on a planar cell grid. Every cell carries
// one label: kOutside or a subsystem id in 0..N-1, so subsystems are
// pairwise disjoint by construction.
//
// Construction validates that every id in 0..N-1 is used and that no 2x2
// window contains a diagonal pinch for any union of subsystems: a pair of
// diagonal cells whose labels could both lie inside a union while the two
// anti-diagonal cells lie outside it. Pinch-free grids give the same topology
// under 4-adjacency for a region and for its complement.
class GridCss {
 public:
  GridCss() = default;

  static GridCss from_labels(int width, int height, std::vector<int> labels,
                             std::string name = {}, GridLimits limits = {});

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int n_subsystems() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // kOutside for coordinates beyond the grid.
  int label(int x, int y) const noexcept;
  std::span<const int> labels() const noexcept { return labels_; }
  const Region& subsystem(int id) const;

  SubsetMask all_mask() const noexcept { return (SubsetMask{1} << n_) - 1; }

  // Keeps only the listed subsystems (others become outside) and relabels
  // them 0..k-1 in the given order.
  GridCss restricted_to(std::span<const int> ids) const;

  friend bool operator==(const GridCss& a, const GridCss& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.labels_ == b.labels_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  int n_ = 0;
  std::vector<int> labels_;
  std::vector<Region> subsystems_;
  std::string name_;
};

// Lowest pinch location, if any. Exposed for builders that grow grids cell
// by cell. Windows are taken over the grid padded by one outside cell.
bool has_pinch_at(std::span<const int> labels, int width, int height, int wx, int wy);

// '.' is outside; 'A'-'Z' then 'a'-'z' are ids 0..51; lines starting with
// '#' are comments; blank lines are ignored; ragged lines are rejected.
GridCss parse_ascii_grid(std::string_view text, std::string name = {}, GridLimits limits = {});
std::string to_ascii(const GridCss& css);

char label_char(int id);

}  // namespace topo
