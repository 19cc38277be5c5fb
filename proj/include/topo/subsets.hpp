#pragma once

#include <cstdint>
#include <vector>

#include "topo/grid.hpp"

namespace topo {

inline constexpr int kMaxEnumeratedSubsystems = 24;

enum class JStrategy {
  Auto,       // FloodFill up to kFloodFillLimit subsystems, Valuation beyond
  FloodFill,  // flood fill on each union, unions grown one subsystem at a time
  Valuation,  // J = 2 b0 - chi with chi from the cell complex and b0 from pieces
};

inline constexpr int kFloodFillLimit = 12;

struct SubsetOptions {
  JStrategy strategy = JStrategy::Auto;
  int threads = 1;
};

// J and perimeter link count of every non-empty union of subsystems.
// Results do not depend on the strategy or on the thread count.
class SubsetTopology {
 public:
  static SubsetTopology compute(const GridCss& css, SubsetOptions options = {});

  int n() const noexcept { return n_; }
  int j(SubsetMask mask) const { return j_[mask]; }
  long perimeter(SubsetMask mask) const { return perimeter_[mask]; }
  JStrategy strategy() const noexcept { return strategy_; }

 private:
  int n_ = 0;
  JStrategy strategy_ = JStrategy::Auto;
  std::vector<std::uint16_t> j_;
  std::vector<std::uint32_t> perimeter_;

  friend class SubsetBuilder;
};

}  // namespace topo
