// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "topo/engine.hpp"
#include "topo/error.hpp"
#include "topo/graph.hpp"
#include "topo/scenario.hpp"
#include "topo/shapes.hpp"
#include "topo/stabilizer.hpp"
#include "topo/topology.hpp"

namespace fs = std::filesystem;

namespace {

constexpr double kFloatTol = 1e-9;
constexpr double kVectorTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << what;
      pass = false;
    }
  }
};

bool near(double a, double b, double tol = kFloatTol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

long long sgn(int n) { return n % 2 == 0 ? 1 : -1; }

fs::path gallery_dir;

std::vector<topo::GridCss> gallery_grids() {
  std::vector<topo::GridCss> out;
  for (const auto& e : fs::directory_iterator(gallery_dir)) {
    const auto name = e.path().filename().string();
    if (e.path().extension() != ".json" || name.front() == '_') continue;
    auto s = topo::load_scenario(e.path());
    if (s.css) {
      s.css->set_name(name);
      out.push_back(*s.css);
    }
  }
  return out;
}

void annular_invariant(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  for (int n = 3; n <= 8; ++n) {
    auto css = topo::shapes::annulus(n);
    for (double d : {std::sqrt(2.0), 2.0, 3.0}) {
      auto rep = topo::multipartite_information(topo::EntropyModel(d, 0.5), css);
      o.expect(rep.c_n == 2 * sgn(n - 1), "C^" + std::to_string(n));
      o.expect(near(rep.i_n, 2.0 * static_cast<double>(sgn(n)) * std::log(d)),
               "I^" + std::to_string(n));
      o.expect(near(rep.i_n_direct, rep.i_n), "direct path N=" + std::to_string(n));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  o.note << "N=3..8, D in {sqrt2, 2, 3}, " << secs << " s";
}

void vanishing_set(Outcome& o) {
  int count = 0;
  auto zero = [&](const topo::GridCss& css, const std::string& what) {
    o.expect(topo::connectivity_count(css).c_n == 0, what);
    ++count;
  };
  for (int n = 4; n <= 8; ++n) {
    const auto tag = " N=" + std::to_string(n);
    zero(topo::shapes::open_chain(n), "open chain" + tag);
    zero(topo::shapes::annulus_with_island(n), "island" + tag);
    zero(topo::shapes::annulus_with_appendage(n), "appendage" + tag);
    for (int r = 1; r <= n - 3; ++r) {
      zero(topo::shapes::annulus_with_further_handle(n, r),
           "further handle r=" + std::to_string(r) + tag);
    }
  }
  o.note << count << " collections with C^N = 0";
}

void deformation_robustness(Outcome& o) {
  for (int n = 4; n <= 6; ++n) {
    const long long base = topo::connectivity_count(topo::shapes::annulus(n)).c_n;
    const auto tag = " N=" + std::to_string(n);
    for (int arc : {0, 1}) {
      o.expect(topo::connectivity_count(topo::shapes::annulus_with_hole(n, arc)).c_n == base,
               "hole" + tag);
      o.expect(topo::connectivity_count(topo::shapes::annulus_with_self_handle(n, arc)).c_n == base,
               "self handle" + tag);
    }
    o.expect(topo::connectivity_count(topo::shapes::annulus_with_nn_handle(n)).c_n == base,
             "nn handle" + tag);
  }
  o.note << "hole, self and nn handles match the base annulus for N=4..6";
}

void subloop_revival(Outcome& o) {
  topo::EntropyModel m(2.0, 0.5);
  const double s = m.s_topo();
  auto six = topo::subloop_revival(m, topo::shapes::annulus_with_further_handle(6, 2));
  o.expect(six.p == 4 && six.q == 4, "N=6 loop sizes");
  o.expect(near(six.i_p, 2 * s) && near(six.i_q, 2 * s), "N=6 loop informations");
  o.expect(six.i_n == 0.0, "I^6");
  auto five = topo::subloop_revival(m, topo::shapes::annulus_with_further_handle(5, 1));
  o.expect(five.p == 3 && five.q == 4, "N=5 loop sizes");
  o.expect(near(five.i_p, -2 * s) && near(five.i_q, 2 * s), "N=5 loop informations");
  o.expect(five.i_n == 0.0, "I^5");
  o.note << "N=6: I^4 = " << six.i_p / s << ", " << six.i_q / s << " log D; N=5: I^3 = "
         << five.i_p / s << ", I^4 = " << five.i_q / s << " log D";
}

void hole_constraint(Outcome& o) {
  topo::EntropyModel m(2.0, 0.5);
  const double s = m.s_topo();
  auto eight = topo::shapes::figure_eight();
  auto hc = topo::hole_constraint(m, eight);
  o.expect(hc.holes.size() == 2, "two holes");
  long long units = 0;
  for (const auto& h : hc.holes) units += std::llabs(*h.c);
  o.expect(units == 4, "sum of per-hole |C|");
  o.expect(near(hc.sum, 4 * s), "per-hole sum");
  o.expect(topo::connectivity_count(eight).c_n == 0, "I^5");

  auto lattice = topo::shapes::hole_lattice();
  auto rep = topo::multipartite_information(m, lattice);
  o.expect(rep.n_subsystems == 18 && rep.d_nn == 23 && rep.n_h == 6, "lattice shape");
  o.expect(rep.c_n == 0, "I^18");
  long long lattice_units = 0;
  for (const auto& h : rep.holes) lattice_units += h.c ? std::llabs(*h.c) : 1000;
  o.expect(lattice_units == 12, "lattice hole sum");
  o.expect(near(rep.constraint_sum, 12 * s), "lattice constraint");
  o.note << "two holes: " << units << " log D, I^5 = 0; six holes: " << lattice_units
         << " log D, I^18 = 0";
}

void graph_invariants(Outcome& o) {
  for (int n = 3; n <= 12; ++n) {
    o.expect(topo::rho(topo::SimpleGraph::path(n)) == sgn(n - 1), "rho(P_" + std::to_string(n) + ")");
    o.expect(topo::rho(topo::SimpleGraph::cycle(n)) == 0, "rho(C_" + std::to_string(n) + ")");
  }
  for (int n = 3; n <= 8; ++n) {
    for (auto css : {topo::shapes::annulus(n), topo::shapes::open_chain(n)}) {
      const long long want = -topo::rho(topo::SimpleGraph::from_css(topo::adjacency_graph(css)));
      try {
        o.expect(topo::sigma_of_css(css) == want, "Sigma N=" + std::to_string(n));
      } catch (const topo::Error& e) {
        o.expect(false, e.what());
      }
    }
  }
  o.note << "P_n, C_n for n=3..12; Sigma on annulus and open chain N=3..8";
}

void recursion(Outcome& o) {
  topo::EntropyModel m(2.0, 0.5);
  double worst = 0.0;
  int count = 0;
  auto check = [&](const topo::GridCss& css) {
    auto rc = topo::recursion_check(m, css);
    const double rel = rc.residual / std::max(1.0, std::abs(rc.lhs));
    worst = std::max(worst, rel);
    o.expect(rel < kFloatTol, "residual on " + css.name());
    ++count;
  };
  for (const auto& css : gallery_grids()) check(css);
  std::mt19937_64 rng(20240611);
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + static_cast<int>(rng() % 6);
    auto css = topo::shapes::random_css(rng(), n, 10, 9);
    css.set_name("fuzz-" + std::to_string(k));
    check(css);
  }
  o.note << count << " collections, worst relative residual " << worst;
}

void geometric_cancellation(Outcome& o) {
  std::vector<topo::GridCss> all = gallery_grids();
  for (int n = 3; n <= 8; ++n) all.push_back(topo::shapes::annulus(n));
  int count = 0;
  for (const auto& css : all) {
    if (css.n_subsystems() < 3) continue;
    const auto ref = topo::multipartite_information(topo::EntropyModel(2.0, 0.0), css);
    for (double a : {0.5, std::log(2.0), 3.7}) {
      const auto rep = topo::multipartite_information(topo::EntropyModel(2.0, a), css);
      o.expect(near(rep.i_n, ref.i_n) && near(rep.i_n_direct, ref.i_n),
               "alpha " + std::to_string(a) + " on " + css.name());
    }
    ++count;
  }
  o.note << count << " collections, alpha in {0, 0.5, log 2, 3.7}";
}

void stabilizer_cross_check(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  auto three = topo::parse_ascii_grid("AAB\nC.B\nCCB\n");
  auto four = topo::parse_ascii_grid("AAB\nD.B\nDCC\n");
  topo::EntropyModel bits(2.0, 1.0, topo::LogBase::Two);
  std::ostringstream vals;
  for (auto boundary : {topo::Boundary::Torus, topo::Boundary::Planar}) {
    const int l = boundary == topo::Boundary::Torus ? 4 : 5;
    topo::CodeLattice lat(l, l, boundary);
    auto state = topo::build_code(lat);
    for (const auto* css : {&three, &four}) {
      const int n = css->n_subsystems();
      const long long exact = topo::multipartite_information_exact(state, topo::rasterize(*css, lat));
      const double analytic = topo::multipartite_information(bits, *css).i_n;
      o.expect(exact == 2 * sgn(n), "exact N=" + std::to_string(n));
      o.expect(static_cast<double>(exact) == analytic, "analytic N=" + std::to_string(n));
      vals << exact << ' ';
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(secs < 10.0, "runtime");
  o.note << "torus4 / planar5 I^3, I^4 in log 2: " << vals.str() << "(" << secs << " s)";
}

void oracle_self_validation(Outcome& o) {
  const double ln2 = std::log(2.0);
  auto check = [&](const topo::StabilizerState& s, long mask) {
    std::vector<int> q;
    for (int i = 0; i < s.n_qubits(); ++i)
      if ((mask >> i) & 1) q.push_back(i);
    const long long bits = topo::entropy_of_qubits(s, q).bits;
    const double dense = topo::brute_force_entropy(s, q);
    o.expect(std::llround(dense / ln2) == bits && std::abs(dense - bits * ln2) < 1e-9,
             "subset " + std::to_string(mask));
  };
  auto torus = topo::build_code(topo::CodeLattice(2, 2, topo::Boundary::Torus));
  for (long mask = 1; mask < 256; ++mask) check(torus, mask);
  auto patch = topo::build_code(topo::CodeLattice(2, 4, topo::Boundary::Planar));
  o.expect(patch.n_qubits() == 10, "patch size");
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> pick(1, (1L << 10) - 1);
  for (int k = 0; k < 200; ++k) check(patch, pick(rng));
  o.note << "255 torus subsets, 200 planar subsets";
}

void strong_subadditivity(Outcome& o) {
  for (int n = 3; n <= 8; ++n) {
    auto css = topo::shapes::annulus(n);
    const double flat = topo::strong_subadditivity_combination(topo::EntropyModel(1.0, 0.5), css);
    const double two = topo::strong_subadditivity_combination(topo::EntropyModel(2.0, 0.5), css);
    o.expect(std::abs(flat) < kFloatTol, "D=1 N=" + std::to_string(n));
    o.expect(near(two, -2 * std::log(2.0)), "D=2 N=" + std::to_string(n));
    o.expect(flat <= kFloatTol && two <= kFloatTol, "sign N=" + std::to_string(n));
  }
  auto ring = topo::parse_ascii_grid("AAB\nC.B\nCCB\n");
  topo::CodeLattice lat(4, 4, topo::Boundary::Torus);
  auto state = topo::build_code(lat);
  auto map = topo::rasterize(ring, lat);
  const auto loop = topo::annular_loop(ring);
  const double stab = topo::strong_subadditivity_combination(
      [&](topo::SubsetMask m) { return static_cast<double>(topo::union_entropy_bits(state, map, m)); },
      loop);
  o.expect(stab == -2.0, "stabilizer");
  o.note << "annuli: 0 (D=1), -2 log 2 (D=2); torus annulus: " << stab << " log 2";
}

void entanglement_vector(Outcome& o) {
  std::vector<topo::GridCss> family;
  for (int n = 3; n <= 6; ++n) family.push_back(topo::shapes::annulus(n));
  auto v = topo::entanglement_vector(topo::EntropyModel(2.0, 0.5), family);
  o.expect(v.components.size() == 4 && !v.zero, "shape");
  for (double c : v.components) o.expect(std::abs(c - 1.0) <= kVectorTol, "component");
  auto flat = topo::entanglement_vector(topo::EntropyModel(1.0, 0.5), family);
  o.expect(flat.zero, "D=1 zero flag");
  o.note << "D=2: (";
  for (std::size_t i = 0; i < v.components.size(); ++i) o.note << (i ? ", " : "") << v.components[i];
  o.note << "); D=1 zero=" << (flat.zero ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
  gallery_dir = argc > 1 ? fs::path(argv[1]) : fs::path("scenarios/gallery");
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"annular invariant", annular_invariant},
      {"vanishing set", vanishing_set},
      {"deformation robustness", deformation_robustness},
      {"sub-loop revival", subloop_revival},
      {"hole constraint", hole_constraint},
      {"graph invariants", graph_invariants},
      {"recursion", recursion},
      {"geometric cancellation", geometric_cancellation},
      {"stabilizer cross-check", stabilizer_cross_check},
      {"oracle self-validation", oracle_self_validation},
      {"strong subadditivity combination", strong_subadditivity},
      {"entanglement vector", entanglement_vector},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    std::printf("%s  %2zu %-34s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.note.str().c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
