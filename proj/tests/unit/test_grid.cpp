#include "doctest.h"

#include <string>

#include "oracles.hpp"
#include "topo/error.hpp"
#include "topo/grid.hpp"
#include "topo/shapes.hpp"
#include "topo/subsets.hpp"
#include "topo/topology.hpp"

using topo::ErrorCode;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const topo::Error& e) {
    return e.code();
  }
  FAIL("no topo::Error thrown");
  return ErrorCode::ValidationError;
}

topo::Region region_from(const std::string& art) {
  auto css = topo::parse_ascii_grid(art);
  return css.subsystem(0);
}

}  // namespace

TEST_CASE("ascii grids round trip") {
  const std::string art = "AAB\nC.B\nCCB\n";
  auto css = topo::parse_ascii_grid("# comment\n\n" + art);
  CHECK(css.width() == 3);
  CHECK(css.height() == 3);
  CHECK(css.n_subsystems() == 3);
  CHECK(css.label(1, 1) == topo::kOutside);
  CHECK(css.label(-1, 0) == topo::kOutside);
  CHECK(topo::to_ascii(css) == art);
  CHECK(topo::parse_ascii_grid(topo::to_ascii(css)) == css);
}

TEST_CASE("label characters") {
  CHECK(topo::label_char(0) == 'A');
  CHECK(topo::label_char(25) == 'Z');
  CHECK(topo::label_char(26) == 'a');
  CHECK(code_of([] { topo::label_char(52); }) == ErrorCode::ValidationError);
}

TEST_CASE("parse errors carry a location") {
  try {
    topo::parse_ascii_grid("AAA\nA?A\n");
    FAIL("accepted bad character");
  } catch (const topo::Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    topo::parse_ascii_grid("AAA\nAA\n");
    FAIL("accepted ragged rows");
  } catch (const topo::Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(code_of([] { topo::parse_ascii_grid("# nothing\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("grids reject pinches and unused ids") {
  CHECK(code_of([] { topo::parse_ascii_grid("A.\n.A\n"); }) == ErrorCode::ValidationError);
  // A and B meet only at a corner with both other cells outside.
  CHECK(code_of([] { topo::parse_ascii_grid("A.\n.B\n"); }) == ErrorCode::ValidationError);
  // Union {A, D} pinches even though every single label is fine.
  CHECK(code_of([] { topo::parse_ascii_grid("AB\nCD\n"); }) == ErrorCode::ValidationError);
  CHECK(code_of([] { topo::parse_ascii_grid("AC\nAC\n"); }) == ErrorCode::ValidationError);
  CHECK_NOTHROW(topo::parse_ascii_grid("AB\nAB\n"));
  CHECK(code_of([] {
          topo::GridLimits small{4};
          topo::parse_ascii_grid("AAA\nAAA\n", "", small);
        }) == ErrorCode::ValidationError);
}

TEST_CASE("restriction relabels in the given order") {
  auto css = topo::parse_ascii_grid("AAB\nC.B\nCCB\n");
  const int ids[] = {2, 0};
  auto r = css.restricted_to(ids);
  CHECK(r.n_subsystems() == 2);
  CHECK(r.label(0, 1) == 0);
  CHECK(r.label(0, 0) == 1);
  CHECK(r.label(2, 0) == topo::kOutside);
}

TEST_CASE("region set operations") {
  topo::Region a(4, 3), b(4, 3);
  a.insert(0, 0);
  a.insert(3, 2);
  b.insert(3, 2);
  b.insert(1, 1);
  CHECK((a | b).size() == 3);
  CHECK((a & b).size() == 1);
  CHECK(a.complement().size() == 10);
  CHECK_FALSE(a.contains(4, 0));
  a.erase(0, 0);
  CHECK(a.size() == 1);
  CHECK(code_of([&] { a |= topo::Region(3, 3); }) == ErrorCode::ValidationError);
}

TEST_CASE("bar of three cells") {
  auto r = region_from("AAA\n");
  CHECK(topo::perimeter_links(r) == 8);
  CHECK(topo::boundary_component_count(r) == 1);
  CHECK(oracle::trace_boundary(r) == std::pair{1, 8});
}

TEST_CASE("annulus with a second hole has three boundary curves") {
  std::string art;
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 12; ++x) {
      const bool inner = x >= 3 && x <= 8 && y >= 3 && y <= 8;
      const bool extra = x == 1 && y == 6;
      art += inner || extra ? '.' : 'A';
    }
    art += '\n';
  }
  auto r = region_from(art);
  CHECK(topo::boundary_component_count(r) == 3);
  CHECK(topo::region_holes(r).size() == 2);
  CHECK(topo::connected_components(r).count == 1);
  const auto [cycles, edges] = oracle::trace_boundary(r);
  CHECK(cycles == 3);
  CHECK(edges == topo::perimeter_links(r));
  CHECK(edges == 4 * 12 + 4 * 6 + 4);
}

TEST_CASE("empty regions are rejected") {
  topo::Region r(3, 3);
  CHECK(code_of([&] { topo::boundary_component_count(r); }) == ErrorCode::EmptyRegion);
  CHECK(code_of([&] { topo::perimeter_links(r); }) == ErrorCode::EmptyRegion);
  auto css = topo::shapes::annulus(3);
  CHECK(code_of([&] { topo::union_region(css, 0); }) == ErrorCode::EmptySubset);
}

TEST_CASE("J matches boundary tracing on every union") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto css = topo::shapes::random_css(seed, 6, 9, 8);
    for (topo::SubsetMask q = 1; q <= css.all_mask(); ++q) {
      auto u = topo::union_region(css, q);
      const auto [cycles, edges] = oracle::trace_boundary(u);
      REQUIRE(topo::boundary_component_count(u) == cycles);
      REQUIRE(topo::perimeter_links(u) == edges);
    }
  }
  for (int n = 3; n <= 7; ++n) {
    auto css = topo::shapes::annulus(n);
    for (topo::SubsetMask q = 1; q <= css.all_mask(); ++q) {
      auto u = topo::union_region(css, q);
      REQUIRE(topo::boundary_component_count(u) == oracle::trace_boundary(u).first);
    }
  }
}

TEST_CASE("adjacency graph, holes and Euler characteristic") {
  auto ring = topo::shapes::annulus(5);
  auto g = topo::adjacency_graph(ring);
  CHECK(g.d_nn() == 5);
  CHECK(g.has_edge(0, 4));
  CHECK(g.has_edge(4, 0));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(topo::find_holes(ring).n_h() == 1);
  CHECK(topo::euler_characteristic(ring) == 2);

  auto eight = topo::shapes::figure_eight();
  CHECK(topo::find_holes(eight).n_h() == 2);
  CHECK(topo::adjacency_graph(eight).d_nn() == 6);
  CHECK(topo::euler_characteristic(eight) == 2);

  auto lattice = topo::shapes::hole_lattice();
  CHECK(lattice.n_subsystems() == 18);
  CHECK(topo::find_holes(lattice).n_h() == 6);
  CHECK(topo::adjacency_graph(lattice).d_nn() == 23);
  CHECK(topo::euler_characteristic(lattice) == 2);

  // Multiple contacts between the same pair leave extra faces.
  CHECK(topo::euler_characteristic(topo::shapes::split_annulus()) == 3);
  CHECK(topo::euler_characteristic(topo::shapes::annulus_with_hole(5)) == 3);
  CHECK(topo::euler_characteristic(topo::shapes::annulus_with_nn_handle(5)) == 3);

  auto island = topo::shapes::annulus_with_island(5);
  CHECK(code_of([&] { topo::euler_characteristic(island); }) == ErrorCode::DisconnectedCss);
}

TEST_CASE("loops around holes run clockwise from the top") {
  auto ring = topo::shapes::annulus(6);
  const std::vector<int> want{0, 1, 2, 3, 4, 5};
  CHECK(topo::annular_loop(ring) == want);
  CHECK(topo::is_annular(ring));

  auto three = topo::parse_ascii_grid(
      "AAAAA\n"
      "A...B\n"
      "C...B\n"
      "CCCBB\n");
  CHECK(topo::annular_loop(three) == std::vector<int>{0, 1, 2});

  auto eight = topo::shapes::figure_eight();
  auto holes = topo::find_holes(eight);
  CHECK(topo::loop_around_hole(eight, holes.holes[0]).size() == 3);
  CHECK(topo::loop_around_hole(eight, holes.holes[1]).size() == 3);
  CHECK(code_of([&] { topo::annular_loop(eight); }) == ErrorCode::NotAnnular);
}

TEST_CASE("non-cycles around a hole") {
  CHECK_FALSE(topo::is_annular(topo::shapes::open_chain(4)));
  CHECK(code_of([] { topo::annular_loop(topo::shapes::open_chain(4)); }) ==
        ErrorCode::NotAnnular);
  auto self = topo::shapes::annulus_with_self_handle(4);
  auto holes = topo::find_holes(self);
  REQUIRE(holes.n_h() == 2);
  int bad = 0;
  for (const auto& h : holes.holes) {
    try {
      topo::loop_around_hole(self, h);
    } catch (const topo::Error& e) {
      CHECK(e.code() == ErrorCode::NotACycle);
      ++bad;
    }
  }
  CHECK(bad == 1);
  // Two subsystems cannot form a loop.
  auto two = topo::parse_ascii_grid("AAA\nA.B\nBBB\n");
  CHECK(code_of([&] { topo::loop_around_hole(two, topo::find_holes(two).holes[0]); }) ==
        ErrorCode::NotACycle);
}

TEST_CASE("random builder always yields valid pinch-free grids") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    auto css = topo::shapes::random_css(seed, 5, 8, 8);
    CHECK(css.n_subsystems() == 5);
    auto again = topo::parse_ascii_grid(topo::to_ascii(css));
    CHECK(again == css);
    CHECK(topo::shapes::random_css(seed, 5, 8, 8) == css);
  }
}

TEST_CASE("FloodFill and Valuation agree") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    auto css = topo::shapes::random_css(seed, n, 10, 9);
    auto a = topo::SubsetTopology::compute(css, {topo::JStrategy::FloodFill, 1});
    auto b = topo::SubsetTopology::compute(css, {topo::JStrategy::Valuation, 3});
    for (topo::SubsetMask q = 1; q <= css.all_mask(); ++q) {
      REQUIRE(a.j(q) == b.j(q));
      REQUIRE(a.perimeter(q) == b.perimeter(q));
    }
  }
  for (auto css : {topo::shapes::hole_lattice(), topo::shapes::annulus(13)}) {
    auto a = topo::SubsetTopology::compute(css, {topo::JStrategy::FloodFill, 4});
    auto b = topo::SubsetTopology::compute(css, {topo::JStrategy::Valuation, 4});
    CHECK(b.strategy() == topo::JStrategy::Valuation);
    bool same = true;
    for (topo::SubsetMask q = 1; q <= css.all_mask(); ++q)
      same = same && a.j(q) == b.j(q) && a.perimeter(q) == b.perimeter(q);
    CHECK(same);
  }
}

TEST_CASE("subset tables do not depend on thread count") {
  auto css = topo::shapes::random_css(7, 10, 12, 10);
  for (auto strategy : {topo::JStrategy::FloodFill, topo::JStrategy::Valuation}) {
    auto one = topo::SubsetTopology::compute(css, {strategy, 1});
    auto many = topo::SubsetTopology::compute(css, {strategy, 7});
    bool same = true;
    for (topo::SubsetMask q = 1; q <= css.all_mask(); ++q)
      same = same && one.j(q) == many.j(q) && one.perimeter(q) == many.perimeter(q);
    CHECK(same);
  }
}

TEST_CASE("auto strategy switches above twelve subsystems") {
  CHECK(topo::SubsetTopology::compute(topo::shapes::annulus(12)).strategy() ==
        topo::JStrategy::FloodFill);
  CHECK(topo::SubsetTopology::compute(topo::shapes::annulus(13)).strategy() ==
        topo::JStrategy::Valuation);
  CHECK(code_of([] { topo::SubsetTopology::compute(topo::shapes::annulus(25)); }) ==
        ErrorCode::TooManySubsystems);
}
