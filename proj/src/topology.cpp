#include "topo/topology.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "topo/error.hpp"

namespace topo {

namespace {

constexpr std::array<std::pair<int, int>, 4> kNeighbours{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

// Flood fill over an abstract width x height grid where in(x, y) selects cells.
template <typename Pred>
Components flood(int width, int height, Pred in) {
  Components out;
  out.labeling.assign(static_cast<std::size_t>(width) * height, -1);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      if (!in(x, y) || out.labeling[i] != -1) continue;
      const int id = out.count++;
      out.labeling[i] = id;
      stack.emplace_back(x, y);
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (auto [dx, dy] : kNeighbours) {
          const int nx = cx + dx;
          const int ny = cy + dy;
          if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
          const std::size_t j = static_cast<std::size_t>(ny) * width + nx;
          if (out.labeling[j] != -1 || !in(nx, ny)) continue;
          out.labeling[j] = id;
          stack.emplace_back(nx, ny);
        }
      }
    }
  }
  return out;
}

// Complement components in the padded grid; component of the padded corner is
// the unbounded one.
Components padded_complement(const Region& r) {
  return flood(r.width() + 2, r.height() + 2,
               [&](int x, int y) { return !r.contains(x - 1, y - 1); });
}

}  // namespace

Components connected_components(const Region& r) {
  return flood(r.width(), r.height(), [&](int x, int y) { return r.contains(x, y); });
}

std::vector<Region> region_holes(const Region& r) {
  const Components comp = padded_complement(r);
  const int pw = r.width() + 2;
  const int outer = comp.labeling[0];
  // Every cell on the padding ring is outside r, so they all share `outer`.
  std::vector<Region> holes;
  std::vector<int> slot(static_cast<std::size_t>(comp.count), -1);
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      const int c = comp.labeling[static_cast<std::size_t>(y + 1) * pw + (x + 1)];
      if (c < 0 || c == outer) continue;
      if (slot[static_cast<std::size_t>(c)] < 0) {
        slot[static_cast<std::size_t>(c)] = static_cast<int>(holes.size());
        holes.emplace_back(r.width(), r.height());
      }
      holes[static_cast<std::size_t>(slot[static_cast<std::size_t>(c)])].insert(x, y);
    }
  }
  return holes;
}

int boundary_component_count(const Region& r) {
  if (r.empty()) throw Error(ErrorCode::EmptyRegion, "J is undefined for an empty region");
  return connected_components(r).count + (padded_complement(r).count - 1);
}

int perimeter_links(const Region& r) {
  if (r.empty()) throw Error(ErrorCode::EmptyRegion, "perimeter of an empty region");
  int n = 0;
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      if (!r.contains(x, y)) continue;
      for (auto [dx, dy] : kNeighbours) n += r.contains(x + dx, y + dy) ? 0 : 1;
    }
  }
  return n;
}

Region union_region(const GridCss& css, SubsetMask subset) {
  if (subset == 0) throw Error(ErrorCode::EmptySubset, "union over no subsystems");
  if ((subset & ~css.all_mask()) != 0) {
    throw Error(ErrorCode::ValidationError, "subset names ids beyond N");
  }
  Region out(css.width(), css.height());
  for (int id = 0; id < css.n_subsystems(); ++id) {
    if ((subset >> id) & 1u) out |= css.subsystem(id);
  }
  return out;
}

bool CssGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

CssGraph adjacency_graph(const GridCss& css) {
  std::set<std::pair<int, int>> edges;
  for (int y = 0; y < css.height(); ++y) {
    for (int x = 0; x < css.width(); ++x) {
      const int a = css.label(x, y);
      if (a == kOutside) continue;
      for (int b : {css.label(x + 1, y), css.label(x, y + 1)}) {
        if (b != kOutside && b != a) edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
  return CssGraph{css.n_subsystems(), {edges.begin(), edges.end()}};
}

HoleSet find_holes(const GridCss& css) {
  return HoleSet{region_holes(union_region(css, css.all_mask()))};
}

int euler_characteristic(const GridCss& css) {
  const Region all = union_region(css, css.all_mask());
  const int components = connected_components(all).count;
  if (components != 1) {
    throw Error(ErrorCode::DisconnectedCss,
                "CSS union has " + std::to_string(components) + " components");
  }
  return css.n_subsystems() - adjacency_graph(css).d_nn() + find_holes(css).n_h() + 1;
}

namespace {

// Directed edge walk along the outer contour of `hole`, keeping the hole on
// the walker's right (clockwise on screen, y pointing down). Returns the
// label across each traversed edge.
std::vector<int> outer_contour_labels(const GridCss& css, const Region& hole) {
  const auto cells = hole.cells();
  const Cell start = cells.front();
  // Directions: 0 = E, 1 = S, 2 = W, 3 = N. Vertex (vx, vy) is the top-left
  // corner of cell (vx, vy).
  constexpr std::array<int, 4> dx{1, 0, -1, 0};
  constexpr std::array<int, 4> dy{0, 1, 0, -1};
  auto right_cell = [](int vx, int vy, int d) -> Cell {
    switch (d) {
      case 0: return {vx, vy};
      case 1: return {vx - 1, vy};
      case 2: return {vx - 1, vy - 1};
      default: return {vx, vy - 1};
    }
  };
  auto left_cell = [](int vx, int vy, int d) -> Cell {
    switch (d) {
      case 0: return {vx, vy - 1};
      case 1: return {vx, vy};
      case 2: return {vx - 1, vy};
      default: return {vx - 1, vy - 1};
    }
  };
  auto is_boundary = [&](int vx, int vy, int d) {
    return hole.contains(right_cell(vx, vy, d)) && !hole.contains(left_cell(vx, vy, d));
  };

  std::vector<int> labels;
  int vx = start.x;
  int vy = start.y;
  int d = 0;
  const int sx = vx, sy = vy, sd = d;
  const std::size_t limit = 4 * (hole.size() + 1) * 4;
  do {
    const Cell across = left_cell(vx, vy, d);
    labels.push_back(css.label(across.x, across.y));
    vx += dx[static_cast<std::size_t>(d)];
    vy += dy[static_cast<std::size_t>(d)];
    bool moved = false;
    for (int turn : {1, 0, 3}) {  // right, straight, left
      const int nd = (d + turn) % 4;
      if (is_boundary(vx, vy, nd)) {
        d = nd;
        moved = true;
        break;
      }
    }
    if (!moved || labels.size() > limit) {
      throw Error(ErrorCode::ValidationError, "hole contour walk did not close");
    }
  } while (vx != sx || vy != sy || d != sd);
  return labels;
}

}  // namespace

std::vector<int> loop_around_hole(const GridCss& css, const Region& hole) {
  if (hole.empty()) throw Error(ErrorCode::EmptyRegion, "empty hole");
  const HoleSet holes = find_holes(css);
  if (std::find(holes.holes.begin(), holes.holes.end(), hole) == holes.holes.end()) {
    throw Error(ErrorCode::PreconditionViolated, "region is not a hole of the CSS");
  }

  std::set<int> touching;
  for (const Cell& c : hole.cells()) {
    for (auto [dx, dy] : kNeighbours) {
      const int l = css.label(c.x + dx, c.y + dy);
      if (!hole.contains(c.x + dx, c.y + dy) && l != kOutside) touching.insert(l);
    }
  }

  // Collapse the contour into runs of equal labels, cyclically.
  std::vector<int> contour = outer_contour_labels(css, hole);
  std::vector<int> runs;
  for (int l : contour) {
    if (runs.empty() || runs.back() != l) runs.push_back(l);
  }
  while (runs.size() > 1 && runs.front() == runs.back()) runs.pop_back();

  std::vector<int> order;
  for (int l : runs) {
    if (std::find(order.begin(), order.end(), l) != order.end()) {
      throw Error(ErrorCode::NotACycle, "subsystem " + std::to_string(l) +
                                            " meets the hole along disconnected arcs");
    }
    order.push_back(l);
  }
  if (std::set<int>(order.begin(), order.end()) != touching) {
    throw Error(ErrorCode::NotACycle, "subsystems inside the hole also touch it");
  }
  if (order.size() < 3) {
    throw Error(ErrorCode::NotACycle,
                "only " + std::to_string(order.size()) + " subsystems surround the hole");
  }
  const CssGraph g = adjacency_graph(css);
  for (std::size_t k = 0; k < order.size(); ++k) {
    int degree = 0;
    for (std::size_t m = 0; m < order.size(); ++m) {
      if (m != k && g.has_edge(order[k], order[m])) ++degree;
    }
    const int next = order[(k + 1) % order.size()];
    if (degree != 2 || !g.has_edge(order[k], next)) {
      throw Error(ErrorCode::NotACycle, "subsystems around the hole do not induce a cycle");
    }
  }
  return order;
}

std::vector<int> annular_loop(const GridCss& css) {
  const HoleSet holes = find_holes(css);
  std::vector<std::vector<int>> full;
  for (const Region& h : holes.holes) {
    try {
      auto loop = loop_around_hole(css, h);
      if (static_cast<int>(loop.size()) == css.n_subsystems()) full.push_back(std::move(loop));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotACycle) throw;
    }
  }
  if (full.size() != 1) {
    throw Error(ErrorCode::NotAnnular, std::to_string(full.size()) +
                                           " holes are encircled by all " +
                                           std::to_string(css.n_subsystems()) + " subsystems");
  }
  return full.front();
}

bool is_annular(const GridCss& css) {
  try {
    annular_loop(css);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAnnular) return false;
    throw;
  }
}

}  // namespace topo
