#pragma once

#include <utility>
#include <vector>

#include "topo/grid.hpp"

namespace topo {

struct Components {
  int count = 0;
  // Row-major component id per cell, -1 for cells outside the region.
  std::vector<int> labeling;
};

// 4-neighbour flood fill.
Components connected_components(const Region& r);

// Bounded components of the complement of r, taken in the grid padded by
// one cell on every side so the unbounded component is unique.
std::vector<Region> region_holes(const Region& r);

// J: number of disjoint closed curves bounding r (components plus holes).
int boundary_component_count(const Region& r);

// Grid edges with exactly one adjacent cell inside r.
int perimeter_links(const Region& r);

Region union_region(const GridCss& css, SubsetMask subset);

struct CssGraph {
  int n_vertices = 0;
  // Lexicographic, i < j.
  std::vector<std::pair<int, int>> edges;

  int d_nn() const noexcept { return static_cast<int>(edges.size()); }
  bool has_edge(int i, int j) const;
};

CssGraph adjacency_graph(const GridCss& css);

struct HoleSet {
  std::vector<Region> holes;
  int n_h() const noexcept { return static_cast<int>(holes.size()); }
};

// Holes of the full CSS union, ordered by their first cell in row-major order.
HoleSet find_holes(const GridCss& css);

// V - E + F with V = N, E = d_nn, F = n_h + 1. Requires a connected union.
int euler_characteristic(const GridCss& css);

// Subsystems touching `hole`, in clockwise order starting from the subsystem
// above the hole's first row-major cell. Throws NotACycle when the touching
// set does not induce a single cycle of length >= 3 in the adjacency graph
// or a subsystem meets the hole along more than one arc.
std::vector<int> loop_around_hole(const GridCss& css, const Region& hole);

// Loop of the unique hole encircled by all N subsystems. Throws NotAnnular
// if no hole or more than one hole qualifies.
std::vector<int> annular_loop(const GridCss& css);

bool is_annular(const GridCss& css);

}  // namespace topo
