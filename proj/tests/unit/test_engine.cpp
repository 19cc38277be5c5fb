#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "topo/engine.hpp"
#include "topo/error.hpp"
#include "topo/shapes.hpp"
#include "topo/topology.hpp"

using doctest::Approx;
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

long long alternating_sign(int n) { return n % 2 == 0 ? 1 : -1; }

std::string islands(int n) {
  std::string row;
  for (int i = 0; i < n; ++i) {
    if (i) row += '.';
    row += topo::label_char(i);
  }
  return row + "\n";
}

}  // namespace

TEST_CASE("region entropy follows the area law with a topological correction") {
  topo::EntropyModel m(2.0, 0.25);
  auto bar = topo::parse_ascii_grid("AAA\n").subsystem(0);
  CHECK(topo::entropy_of_region(m, bar) == Approx(0.25 * 8 - std::log(2.0)));
  topo::EntropyModel bits(2.0, 0.25, topo::LogBase::Two);
  CHECK(bits.s_topo() == Approx(1.0));
  CHECK(topo::entropy_of_region(bits, bar) == Approx(2.0 - 1.0));
}

TEST_CASE("model validation") {
  CHECK(code_of([] { topo::EntropyModel(0.5, 0.1); }) == ErrorCode::ValidationError);
  CHECK(code_of([] { topo::EntropyModel(2.0, NAN); }) == ErrorCode::ValidationError);
  CHECK(code_of([] { topo::EntropyModel(INFINITY, 0.1); }) == ErrorCode::ValidationError);
  CHECK(code_of([] { topo::EntropyModel::from_anyons(2.0, {1, 1, 1}); }) ==
        ErrorCode::ValidationError);
  CHECK(code_of([] { topo::EntropyModel::from_anyons(2.0, {}); }) == ErrorCode::ValidationError);
}

TEST_CASE("alpha from anyon content") {
  // Toric code: four abelian anyons, D = 2, weights d^2 / D = 1/2.
  auto tc = topo::EntropyModel::from_anyons(2.0, {1, 1, 1, 1});
  CHECK(tc.alpha() == Approx(4 * 0.5 * std::log(2.0)));
  // Fibonacci: d = golden ratio, D^2 = 1 + phi^2.
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const double d = std::sqrt(1 + phi * phi);
  auto fib = topo::EntropyModel::from_anyons(d, {1, phi}, topo::LogBase::Two);
  const double w0 = 1 / d, w1 = phi * phi / d;
  CHECK(fib.alpha() == Approx(-(w0 * std::log2(w0) + w1 * std::log2(w1))));
  CHECK(fib.anyon_dims().has_value());
  CHECK_FALSE(fib.with_alpha(1.0).anyon_dims().has_value());
}

TEST_CASE("quantum dimension from K") {
  CHECK(topo::quantum_dimension_from_K({{2}}) == Approx(std::sqrt(2.0)));
  CHECK(topo::quantum_dimension_from_K({{0, 2}, {2, 0}}) == Approx(2.0));
  CHECK(topo::quantum_dimension_from_K({{3}}) == Approx(std::sqrt(3.0)));
  // det = -3
  CHECK(topo::quantum_dimension_from_K({{1, 2, 0}, {1, 0, 1}, {0, 1, 1}}) ==
        Approx(std::sqrt(3.0)));
  // zero pivot, needs a row swap
  CHECK(topo::quantum_dimension_from_K({{0, 1, 0}, {1, 0, 0}, {0, 0, 5}}) ==
        Approx(std::sqrt(5.0)));
  CHECK(topo::quantum_dimension_from_K({{0, 1}, {1, 0}}) == Approx(1.0));
  CHECK(code_of([] { topo::quantum_dimension_from_K({{1, 2}, {2, 4}}); }) == ErrorCode::SingularK);
  CHECK(code_of([] { topo::quantum_dimension_from_K({{0, 0}, {0, 3}}); }) == ErrorCode::SingularK);
  CHECK(code_of([] { topo::quantum_dimension_from_K({{1, 2}}); }) == ErrorCode::ValidationError);
}

TEST_CASE("annuli give two log D with alternating sign") {
  for (double d : {std::sqrt(2.0), 2.0, 3.0}) {
    topo::EntropyModel m(d, 0.37);
    for (int n = 3; n <= 8; ++n) {
      auto rep = topo::multipartite_information(m, topo::shapes::annulus(n));
      CHECK(rep.c_n == -2 * alternating_sign(n));
      CHECK(rep.i_n == Approx(2 * alternating_sign(n) * std::log(d)));
      CHECK(rep.paths_agree);
      CHECK(rep.n_h == 1);
      CHECK(rep.d_nn == n);
      CHECK(rep.chi == 2);
      REQUIRE(rep.holes.size() == 1);
      CHECK(rep.holes[0].loop.size() == static_cast<std::size_t>(n));
      CHECK(rep.constraint_sum == Approx(2 * std::log(d)));
      auto chk = topo::annular_invariant_check(m, topo::shapes::annulus(n));
      CHECK(chk.pass);
    }
  }
}

TEST_CASE("D = 1 carries no topological information") {
  topo::EntropyModel m(1.0, 0.5);
  auto rep = topo::multipartite_information(m, topo::shapes::annulus(5));
  CHECK(rep.c_n == 2);
  CHECK(rep.i_n == 0.0);
  CHECK(std::abs(rep.i_n_direct) < 1e-12);
}

TEST_CASE("vanishing families") {
  topo::EntropyModel m(2.0, 0.5);
  for (int n = 4; n <= 7; ++n) {
    CHECK(topo::connectivity_count(topo::shapes::open_chain(n)).c_n == 0);
    CHECK(topo::connectivity_count(topo::shapes::annulus_with_island(n)).c_n == 0);
    CHECK(topo::connectivity_count(topo::shapes::annulus_with_appendage(n)).c_n == 0);
    for (int r = 1; r <= n - 3; ++r) {
      CHECK(topo::connectivity_count(topo::shapes::annulus_with_further_handle(n, r)).c_n == 0);
    }
  }
}

TEST_CASE("variants that keep the annular value") {
  for (int n = 4; n <= 6; ++n) {
    const long long want = -2 * alternating_sign(n);
    for (int arc : {0, 1}) {
      CHECK(topo::connectivity_count(topo::shapes::annulus_with_hole(n, arc)).c_n == want);
      CHECK(topo::connectivity_count(topo::shapes::annulus_with_self_handle(n, arc)).c_n == want);
    }
    CHECK(topo::connectivity_count(topo::shapes::annulus_with_nn_handle(n)).c_n == want);
  }
  CHECK(topo::connectivity_count(topo::shapes::split_annulus()).c_n == 2);
}

TEST_CASE("alternating sums over subsets") {
  // sum_{m=1}^{N} (-1)^{m-1} C(N, m) = 1 and sum (-1)^{m-1} m C(N, m) = 0.
  for (int n = 1; n <= 24; ++n) {
    long long plain = 0, weighted = 0, binom = 1;
    for (int m = 1; m <= n; ++m) {
      binom = binom * (n - m + 1) / m;
      plain += (m % 2 == 1 ? 1 : -1) * binom;
      weighted += (m % 2 == 1 ? 1 : -1) * m * binom;
    }
    CHECK(plain == 1);
    CHECK(weighted == (n == 1 ? 1 : 0));
  }
  // Isolated islands: J(union Q) = |Q|, so C^N vanishes for N >= 2.
  for (int n : {2, 5, 12, 16}) {
    auto css = topo::parse_ascii_grid(islands(n));
    CHECK(topo::connectivity_count(css).c_n == 0);
  }
}

TEST_CASE("information is independent of alpha") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto css = topo::shapes::random_css(seed, 3 + static_cast<int>(seed % 5), 9, 9);
    topo::EntropyModel base(2.0, 0.0);
    auto ref = topo::multipartite_information(base, css);
    for (double a : {0.5, std::log(2.0), 3.7}) {
      auto rep = topo::multipartite_information(base.with_alpha(a), css);
      CHECK(rep.c_n == ref.c_n);
      CHECK(rep.i_n == ref.i_n);
      CHECK(rep.i_n_direct == Approx(ref.i_n).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("results do not depend on thread count or strategy") {
  auto css = topo::shapes::random_css(42, 9, 12, 10);
  topo::EntropyModel m(3.0, 0.8);
  auto one = topo::multipartite_information(m, css, {topo::JStrategy::FloodFill, 1, true});
  auto many = topo::multipartite_information(m, css, {topo::JStrategy::Valuation, 6, true});
  CHECK(one.c_n == many.c_n);
  CHECK(one.i_n == many.i_n);
  CHECK(one.i_n_direct == many.i_n_direct);
}

TEST_CASE("fewer than three subsystems are rejected") {
  topo::EntropyModel m(2.0, 0.5);
  auto two = topo::parse_ascii_grid("AB\n");
  CHECK(code_of([&] { topo::multipartite_information(m, two); }) == ErrorCode::TooFewSubsystems);
  CHECK(code_of([&] { topo::recursion_check(m, topo::parse_ascii_grid("A\n")); }) ==
        ErrorCode::TooFewSubsystems);
}

TEST_CASE("two-hole figure and the hole lattice") {
  topo::EntropyModel m(2.0, 0.5);
  for (auto css : {topo::shapes::figure_eight(), topo::shapes::hole_lattice()}) {
    auto hc = topo::hole_constraint(m, css);
    CHECK(hc.pass);
    CHECK(hc.i_n_pass);
    CHECK(hc.chi == 2);
    CHECK(hc.i_n == 0.0);
    CHECK(hc.sum == Approx(hc.holes.size() * 2 * std::log(2.0)));
    for (const auto& h : hc.holes) CHECK(std::abs(*h.c) == 2);
  }
  auto eight = topo::multipartite_information(m, topo::shapes::figure_eight());
  CHECK(eight.c_n == 0);
  CHECK(eight.n_h == 2);
  CHECK(eight.constraint_sum == Approx(4 * std::log(2.0)));
}

TEST_CASE("smaller loops revive the information") {
  topo::EntropyModel m(2.0, 0.5);
  for (int n = 4; n <= 7; ++n) {
    for (int r = 1; r <= n - 3; ++r) {
      auto sr = topo::subloop_revival(m, topo::shapes::annulus_with_further_handle(n, r));
      CHECK(sr.p + sr.q - 2 == n);
      CHECK(sr.p <= sr.q);
      CHECK(sr.i_p == Approx(sr.expected_p));
      CHECK(sr.i_q == Approx(sr.expected_q));
      CHECK(sr.i_n == 0.0);
    }
  }
  CHECK(code_of([&] { topo::subloop_revival(m, topo::shapes::annulus(5)); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("recursion identity holds on random collections") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    auto css = topo::shapes::random_css(seed * 31, n, 9, 8);
    topo::EntropyModel m(1.0 + static_cast<double>(seed % 4), 0.3 * static_cast<double>(seed % 5));
    auto rc = topo::recursion_check(m, css);
    CHECK(rc.residual <= 1e-9 * std::max(1.0, std::abs(rc.lhs)));
    // The top-order sum is I^N itself.
    CHECK(rc.order_sums[static_cast<std::size_t>(n)] == Approx(rc.lhs));
  }
}

TEST_CASE("sub-collection informations") {
  topo::EntropyModel m(2.0, 0.5);
  auto css = topo::shapes::annulus(5);
  auto info = topo::subset_informations(m, css);
  // Single subsystems carry their own entropy; pairs their mutual information.
  auto s = [&](topo::SubsetMask q) {
    return topo::entropy_of_region(m, topo::union_region(css, q));
  };
  CHECK(info[1] == Approx(s(1)));
  CHECK(info[3] == Approx(s(1) + s(2) - s(3)));
  CHECK(info[css.all_mask()] == Approx(-2 * std::log(2.0)));
  CHECK(code_of([&] { topo::subset_informations(m, topo::shapes::annulus(21)); }) ==
        ErrorCode::TooManySubsystems);
}

TEST_CASE("strong subadditivity combination on annuli") {
  topo::EntropyModel m(2.0, 0.5);
  for (int n = 3; n <= 8; ++n) {
    CHECK(topo::strong_subadditivity_combination(m, topo::shapes::annulus(n)) ==
          Approx(-2 * std::log(2.0)));
  }
  topo::EntropyModel flat(1.0, 0.5);
  CHECK(std::abs(topo::strong_subadditivity_combination(flat, topo::shapes::annulus(5))) < 1e-12);
  auto e = [](topo::SubsetMask) { return 0.0; };
  const int repeated[] = {0, 1, 0};
  CHECK(code_of([&] { topo::strong_subadditivity_combination(e, repeated); }) ==
        ErrorCode::ValidationError);
  const int short_order[] = {0, 1};
  CHECK(code_of([&] { topo::strong_subadditivity_combination(e, short_order); }) ==
        ErrorCode::TooFewSubsystems);
}

TEST_CASE("entanglement vector of the annulus family") {
  std::vector<topo::GridCss> family;
  for (int n = 6; n >= 3; --n) family.push_back(topo::shapes::annulus(n));
  auto v = topo::entanglement_vector(topo::EntropyModel(2.0, 0.5), family);
  CHECK(v.sizes == std::vector<int>{3, 4, 5, 6});
  CHECK_FALSE(v.zero);
  for (double c : v.components) CHECK(std::abs(c - 1.0) <= 1e-12);

  auto flat = topo::entanglement_vector(topo::EntropyModel(1.0, 0.5), family);
  CHECK(flat.zero);
  for (double c : flat.components) CHECK(c == 0.0);

  family.pop_back();
  CHECK(code_of([&] { topo::entanglement_vector(topo::EntropyModel(2.0, 0.5), family); }) ==
        ErrorCode::ValidationError);
  std::vector<topo::GridCss> bad{topo::shapes::annulus(3), topo::shapes::open_chain(4)};
  CHECK(code_of([&] { topo::entanglement_vector(topo::EntropyModel(2.0, 0.5), bad); }) ==
        ErrorCode::NotAnnular);
}

TEST_CASE("irreducible correlation bound") {
  topo::EntropyModel m(3.0, 0.5);
  CHECK(topo::irreducible_correlation_bound(m, topo::shapes::annulus(4)) ==
        Approx(2 * std::log(3.0)));
  CHECK(code_of([&] { topo::irreducible_correlation_bound(m, topo::shapes::open_chain(4)); }) ==
        ErrorCode::NotAnnular);
}

TEST_CASE("large collections use the valuation path") {
  topo::EntropyModel m(2.0, 0.5);
  for (int n : {13, 16}) {
    auto rep = topo::multipartite_information(m, topo::shapes::annulus(n));
    CHECK(rep.c_n == -2 * alternating_sign(n));
    CHECK(rep.paths_agree);
    CHECK(rep.table.strategy() == topo::JStrategy::Valuation);
  }
}
