#pragma once

#include <cstdint>

#include "topo/grid.hpp"

// Builders for the standard CSS families. Rings have thickness 3; arcs are
// numbered clockwise (screen coordinates) starting from the top band.
namespace topo::shapes {

GridCss annulus(int n);

// Annulus of n + 1 arcs with the last arc removed.
GridCss open_chain(int n);

// Annulus of n - 1 arcs plus a detached block as subsystem n - 1.
GridCss annulus_with_island(int n);

// Annulus of n - 1 arcs plus a block touching only arc 0 from outside.
GridCss annulus_with_appendage(int n);

// Single missing cell inside arc `arc` (arc 0 or 1).
GridCss annulus_with_hole(int n, int arc = 0);

// Arch leaving arc `arc` and returning to it (arc 0 or 1).
GridCss annulus_with_self_handle(int n, int arc = 0);

// Arch joining arc 0 to arc 1, half owned by each.
GridCss annulus_with_nn_handle(int n);

// Bridge across the hole joining arc 0 to arc r + 1, with r arcs between
// them on the right and n - r - 2 on the left. Both sides need >= 1 arc.
GridCss annulus_with_further_handle(int n, int r);

// Three subsystems around a hole, the second made of two pieces that sit
// between the other two on either side.
GridCss split_annulus();

// Five subsystems, two holes: A shared by both loops, {A,B,C} and {A,D,E}.
GridCss figure_eight();

// Eighteen subsystems around a 2 x 3 array of holes: twelve junctions and
// six wall segments.
GridCss hole_lattice();

// A hub with `petals` disjoint blocks touching it (petals <= 4).
GridCss star(int petals);

// Pinch-free random labelling grown from seeds. Cells are only accepted
// when every 2 x 2 window stays valid, so the result always loads.
GridCss random_css(std::uint64_t seed, int n, int width, int height, double fill = 0.55);

}  // namespace topo::shapes
