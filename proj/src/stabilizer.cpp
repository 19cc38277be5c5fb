#include "topo/stabilizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <queue>
#include <numeric>

#include "parallel.hpp"
#include "topo/error.hpp"

namespace topo {

namespace {

std::size_t word_count(std::size_t cols) { return (cols + 63) / 64; }

// In-place elimination on a flat row-major word array.
std::size_t eliminate(std::vector<std::uint64_t>& m, std::size_t rows, std::size_t words,
                      std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t b = std::uint64_t{1} << (c % 64);
    std::size_t p = rank;
    while (p < rows && !(m[p * words + w] & b)) ++p;
    if (p == rows) continue;
    if (p != rank) {
      std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(p * words),
                       m.begin() + static_cast<std::ptrdiff_t>((p + 1) * words),
                       m.begin() + static_cast<std::ptrdiff_t>(rank * words));
    }
    const std::uint64_t* pivot = m.data() + rank * words;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint64_t* row = m.data() + r * words;
      if (!(row[w] & b)) continue;
      for (std::size_t k = w; k < words; ++k) row[k] ^= pivot[k];
    }
    ++rank;
  }
  return rank;
}

// Rank of the generator matrix restricted to the X and Z columns of `sel`.
std::size_t restricted_rank(const BitMatrix& g, int n, const std::vector<int>& sel) {
  const std::size_t cols = 2 * sel.size();
  const std::size_t words = word_count(cols);
  std::vector<std::uint64_t> m;
  m.reserve(g.rows() * words);
  std::size_t rows = 0;
  std::vector<std::uint64_t> buf(words);
  for (std::size_t r = 0; r < g.rows(); ++r) {
    std::fill(buf.begin(), buf.end(), 0);
    bool any = false;
    for (std::size_t i = 0; i < sel.size(); ++i) {
      const auto q = static_cast<std::size_t>(sel[i]);
      if (g.get(r, q)) {
        buf[(2 * i) / 64] |= std::uint64_t{1} << ((2 * i) % 64);
        any = true;
      }
      if (g.get(r, q + static_cast<std::size_t>(n))) {
        buf[(2 * i + 1) / 64] |= std::uint64_t{1} << ((2 * i + 1) % 64);
        any = true;
      }
    }
    if (!any) continue;
    m.insert(m.end(), buf.begin(), buf.end());
    ++rows;
  }
  return eliminate(m, rows, words, cols);
}

std::vector<char> membership(int n, std::span<const int> qubits) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int q : qubits) {
    if (q < 0 || q >= n) {
      throw Error(ErrorCode::ValidationError, "qubit " + std::to_string(q) + " out of range");
    }
    if (in[static_cast<std::size_t>(q)]) {
      throw Error(ErrorCode::ValidationError, "qubit " + std::to_string(q) + " repeated");
    }
    in[static_cast<std::size_t>(q)] = 1;
  }
  return in;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_(word_count(cols)), data_(rows * words_, 0) {}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) noexcept {
  if (v) data_[r * words_ + c / 64] |= bit(c);
  else data_[r * words_ + c / 64] &= ~bit(c);
}

std::size_t BitMatrix::rank() const {
  std::vector<std::uint64_t> m = data_;
  return eliminate(m, rows_, words_, cols_);
}

StabilizerState::StabilizerState(BitMatrix generators) : g_(std::move(generators)) {
  if (g_.cols() % 2 != 0) {
    throw Error(ErrorCode::ValidationError, "generator rows need 2n columns");
  }
  n_ = static_cast<int>(g_.cols() / 2);
  if (g_.rows() != static_cast<std::size_t>(n_)) {
    throw Error(ErrorCode::ValidationError, std::to_string(g_.rows()) + " generators for " +
                                                std::to_string(n_) + " qubits");
  }
  if (g_.rank() != static_cast<std::size_t>(n_)) {
    throw Error(ErrorCode::ValidationError, "generators are not independent");
  }
  const std::size_t n = static_cast<std::size_t>(n_);
  const std::size_t words = word_count(n);
  std::vector<std::uint64_t> xs(n * words, 0), zs(n * words, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t q = 0; q < n; ++q) {
      if (g_.get(r, q)) xs[r * words + q / 64] |= std::uint64_t{1} << (q % 64);
      if (g_.get(r, q + n)) zs[r * words + q / 64] |= std::uint64_t{1} << (q % 64);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      int parity = 0;
      for (std::size_t k = 0; k < words; ++k) {
        parity += std::popcount(xs[a * words + k] & zs[b * words + k]);
        parity += std::popcount(zs[a * words + k] & xs[b * words + k]);
      }
      if (parity % 2 != 0) {
        throw Error(ErrorCode::ValidationError, "generators " + std::to_string(a) + " and " +
                                                    std::to_string(b) + " anticommute");
      }
    }
  }
}

CodeLattice::CodeLattice(int lx, int ly, Boundary boundary)
    : lx_(lx), ly_(ly), boundary_(boundary) {
  if (lx < 2 || ly < 2) {
    throw Error(ErrorCode::LatticeTooSmall,
                std::to_string(lx) + "x" + std::to_string(ly) + " lattice, need at least 2x2");
  }
  if (static_cast<long long>(lx) * ly > (1 << 20)) {
    throw Error(ErrorCode::ValidationError, "lattice too large");
  }
  const bool torus = boundary == Boundary::Torus;
  const auto cells = static_cast<std::size_t>(lx) * static_cast<std::size_t>(ly);
  h_.assign(cells, -1);
  v_.assign(cells, -1);
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      const auto i = static_cast<std::size_t>(y * lx + x);
      if (torus || x + 1 < lx) {
        h_[i] = n_++;
        edges_.push_back({x, y, true});
      }
      if (torus || y + 1 < ly) {
        v_[i] = n_++;
        edges_.push_back({x, y, false});
      }
    }
  }
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      std::vector<int> s;
      for (int q : {h(x, y), v(x, y), h(x - 1, y), v(x, y - 1)}) {
        if (q >= 0) s.push_back(q);
      }
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      stars_.push_back(std::move(s));
    }
  }
  const int fx = torus ? lx : lx - 1;
  const int fy = torus ? ly : ly - 1;
  for (int y = 0; y < fy; ++y) {
    for (int x = 0; x < fx; ++x) {
      std::vector<int> p{h(x, y), v(x + 1, y), h(x, y + 1), v(x, y)};
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
      plaquettes_.push_back(std::move(p));
    }
  }
}

int CodeLattice::h(int x, int y) const noexcept {
  if (boundary_ == Boundary::Torus) {
    x = mod(x, lx_);
    y = mod(y, ly_);
  } else if (x < 0 || y < 0 || x >= lx_ || y >= ly_) {
    return -1;
  }
  return h_[static_cast<std::size_t>(y * lx_ + x)];
}

int CodeLattice::v(int x, int y) const noexcept {
  if (boundary_ == Boundary::Torus) {
    x = mod(x, lx_);
    y = mod(y, ly_);
  } else if (x < 0 || y < 0 || x >= lx_ || y >= ly_) {
    return -1;
  }
  return v_[static_cast<std::size_t>(y * lx_ + x)];
}

std::vector<std::vector<int>> CodeLattice::logical_z() const {
  if (boundary_ != Boundary::Torus) return {};
  std::vector<int> row, col;
  for (int x = 0; x < lx_; ++x) row.push_back(h(x, 0));
  for (int y = 0; y < ly_; ++y) col.push_back(v(0, y));
  return {row, col};
}

StabilizerState build_code(const CodeLattice& lattice) {
  const int n = lattice.n_qubits();
  std::vector<std::vector<int>> xs(lattice.stars().begin(), lattice.stars().end() - 1);
  std::vector<std::vector<int>> zs = lattice.plaquettes();
  if (lattice.boundary() == Boundary::Torus) {
    zs.pop_back();
    for (auto& l : lattice.logical_z()) zs.push_back(std::move(l));
  }
  BitMatrix g(xs.size() + zs.size(), 2 * static_cast<std::size_t>(n));
  std::size_t r = 0;
  for (const auto& s : xs) {
    for (int q : s) g.set(r, static_cast<std::size_t>(q));
    ++r;
  }
  for (const auto& s : zs) {
    for (int q : s) g.set(r, static_cast<std::size_t>(q + n));
    ++r;
  }
  return StabilizerState(std::move(g));
}

QubitEntropy entropy_of_qubits(const StabilizerState& state, std::span<const int> qubits) {
  if (qubits.empty()) throw Error(ErrorCode::EmptyRegion, "empty qubit set");
  const int n = state.n_qubits();
  std::vector<char> in = membership(n, qubits);
  const auto a = static_cast<long long>(qubits.size());
  if (a == n) return {0, true};
  // S(A) = rank(G|A) - |A| = |A| - (n - rank(G|A^c)); restrict to the smaller side.
  std::vector<int> sel;
  const bool inside = 2 * a <= n;
  for (int q = 0; q < n; ++q) {
    if (static_cast<bool>(in[static_cast<std::size_t>(q)]) == inside) sel.push_back(q);
  }
  const auto r = static_cast<long long>(restricted_rank(state.generators(), n, sel));
  return {inside ? r - a : a - (n - r), false};
}

double brute_force_entropy(const StabilizerState& state, std::span<const int> qubits) {
  const int n = state.n_qubits();
  if (n > kMaxBruteForceQubits) {
    throw Error(ErrorCode::TooManyQubits,
                std::to_string(n) + " qubits, dense limit is " + std::to_string(kMaxBruteForceQubits));
  }
  if (qubits.empty()) throw Error(ErrorCode::EmptyRegion, "empty qubit set");
  std::vector<char> in = membership(n, qubits);
  if (static_cast<int>(qubits.size()) == n) return 0.0;

  const BitMatrix& g = state.generators();
  std::vector<std::uint32_t> x_rows;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    std::uint32_t xb = 0, zb = 0;
    for (int q = 0; q < n; ++q) {
      if (g.get(r, static_cast<std::size_t>(q))) xb |= 1U << q;
      if (g.get(r, static_cast<std::size_t>(q + n))) zb |= 1U << q;
    }
    if (xb && zb) {
      throw Error(ErrorCode::PreconditionViolated, "generator " + std::to_string(r) +
                                                       " mixes X and Z");
    }
    if (xb) x_rows.push_back(xb);
  }
  // The state is the uniform superposition over the X-span acting on |0...0>.
  std::vector<std::uint32_t> support{0};
  for (std::uint32_t row : x_rows) {
    const std::size_t size = support.size();
    for (std::size_t i = 0; i < size; ++i) support.push_back(support[i] ^ row);
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));

  std::vector<int> a_bits, b_bits;
  for (int q = 0; q < n; ++q) (in[static_cast<std::size_t>(q)] ? a_bits : b_bits).push_back(q);
  const Eigen::Index da = Eigen::Index{1} << a_bits.size();
  const Eigen::Index db = Eigen::Index{1} << b_bits.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(da, db);
  for (std::uint32_t s : support) {
    Eigen::Index ia = 0, ib = 0;
    for (std::size_t i = 0; i < a_bits.size(); ++i) ia |= Eigen::Index((s >> a_bits[i]) & 1U) << i;
    for (std::size_t i = 0; i < b_bits.size(); ++i) ib |= Eigen::Index((s >> b_bits[i]) & 1U) << i;
    m(ia, ib) += amp;
  }
  Eigen::MatrixXd rho = da <= db ? Eigen::MatrixXd(m * m.transpose())
                                 : Eigen::MatrixXd(m.transpose() * m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double l = solver.eigenvalues()(i);
    if (l > 1e-12) s -= l * std::log(l);
  }
  return s;
}

int cut_star_count(const CodeLattice& lattice, std::span<const int> qubits) {
  std::vector<char> in = membership(lattice.n_qubits(), qubits);
  int cut = 0;
  for (const auto& s : lattice.stars()) {
    std::size_t inside = 0;
    for (int q : s) inside += in[static_cast<std::size_t>(q)] ? 1 : 0;
    if (inside > 0 && inside < s.size()) ++cut;
  }
  return cut;
}

std::vector<int> QubitRegionMap::union_qubits(SubsetMask mask) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if ((mask >> i) & 1U) out.insert(out.end(), regions[i].begin(), regions[i].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// True when the edges in `qubits` contain a closed path that wraps the torus.
bool winds(const CodeLattice& lattice, const std::vector<int>& qubits) {
  const int lx = lattice.lx(), ly = lattice.ly();
  std::map<int, std::vector<std::pair<int, std::pair<int, int>>>> adj;
  for (int q : qubits) {
    const auto& e = lattice.edge(q);
    const int a = e.y * lx + e.x;
    const int bx = e.horizontal ? mod(e.x + 1, lx) : e.x;
    const int by = e.horizontal ? e.y : mod(e.y + 1, ly);
    const int b = by * lx + bx;
    const std::pair<int, int> d = e.horizontal ? std::pair{1, 0} : std::pair{0, 1};
    adj[a].push_back({b, d});
    adj[b].push_back({a, {-d.first, -d.second}});
  }
  std::map<int, std::pair<int, int>> pos;
  for (const auto& [start, _] : adj) {
    if (pos.count(start)) continue;
    pos[start] = {start % lx, start / lx};
    std::queue<int> todo;
    todo.push(start);
    while (!todo.empty()) {
      const int u = todo.front();
      todo.pop();
      const auto pu = pos[u];
      for (const auto& [w, d] : adj[u]) {
        const std::pair<int, int> pw{pu.first + d.first, pu.second + d.second};
        auto it = pos.find(w);
        if (it == pos.end()) {
          pos[w] = pw;
          todo.push(w);
        } else if (it->second != pw) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

void validate_region_map(const CodeLattice& lattice, const QubitRegionMap& map) {
  if (map.regions.empty()) throw Error(ErrorCode::ValidationError, "no subsystems");
  if (!map.names.empty() && map.names.size() != map.regions.size()) {
    throw Error(ErrorCode::ValidationError, "names and regions differ in length");
  }
  if (map.n_subsystems() > 64) {
    throw Error(ErrorCode::TooManySubsystems, "more than 64 subsystems");
  }
  std::vector<int> owner(static_cast<std::size_t>(lattice.n_qubits()), -1);
  for (std::size_t i = 0; i < map.regions.size(); ++i) {
    if (map.regions[i].empty()) {
      throw Error(ErrorCode::EmptyRegion, "subsystem " + std::to_string(i) + " has no qubits");
    }
    for (int q : map.regions[i]) {
      if (q < 0 || q >= lattice.n_qubits()) {
        throw Error(ErrorCode::ValidationError, "qubit " + std::to_string(q) + " out of range");
      }
      int& o = owner[static_cast<std::size_t>(q)];
      if (o >= 0) {
        throw Error(ErrorCode::ValidationError,
                    "qubit " + std::to_string(q) + " in subsystems " + std::to_string(o) +
                        " and " + std::to_string(i));
      }
      o = static_cast<int>(i);
    }
  }
  if (lattice.boundary() != Boundary::Torus) return;
  const int n = map.n_subsystems();
  if (n > kMaxExactSubsystems) {
    for (int i = 0; i < n; ++i) {
      if (winds(lattice, map.regions[static_cast<std::size_t>(i)])) {
        throw Error(ErrorCode::WindingRegion, "subsystem " + std::to_string(i) + " winds");
      }
    }
    return;
  }
  const SubsetMask all = (SubsetMask{1} << n) - 1;
  for (SubsetMask m = 1; m <= all; ++m) {
    if (winds(lattice, map.union_qubits(m))) {
      throw Error(ErrorCode::WindingRegion, "union of subsystem mask " + std::to_string(m) +
                                                " wraps the torus");
    }
  }
}

QubitRegionMap rasterize(const GridCss& css, const CodeLattice& lattice,
                         std::optional<Cell> origin) {
  const bool torus = lattice.boundary() == Boundary::Torus;
  const Cell o = origin.value_or(torus ? Cell{0, 0} : Cell{1, 1});
  if (torus) {
    if (css.width() > lattice.lx() - 1 || css.height() > lattice.ly() - 1) {
      throw Error(ErrorCode::ValidationError,
                  "grid " + std::to_string(css.width()) + "x" + std::to_string(css.height()) +
                      " needs a free row and column on the torus");
    }
  }
  QubitRegionMap map;
  map.regions.resize(static_cast<std::size_t>(css.n_subsystems()));
  for (int id = 0; id < css.n_subsystems(); ++id) {
    map.names.emplace_back(1, label_char(id));
  }
  for (int y = 0; y < css.height(); ++y) {
    for (int x = 0; x < css.width(); ++x) {
      const int id = css.label(x, y);
      if (id == kOutside) continue;
      const int vx = x + o.x, vy = y + o.y;
      if (!torus && (vx < 1 || vy < 1 || vx > lattice.lx() - 2 || vy > lattice.ly() - 2)) {
        throw Error(ErrorCode::ValidationError,
                    "cell (" + std::to_string(x) + "," + std::to_string(y) +
                        ") lands on or outside the planar boundary");
      }
      auto& r = map.regions[static_cast<std::size_t>(id)];
      r.push_back(lattice.h(vx, vy));
      r.push_back(lattice.v(vx, vy));
    }
  }
  for (auto& r : map.regions) std::sort(r.begin(), r.end());
  validate_region_map(lattice, map);
  return map;
}

long long union_entropy_bits(const StabilizerState& state, const QubitRegionMap& map,
                             SubsetMask mask) {
  if (mask == 0) throw Error(ErrorCode::EmptySubset, "empty subset");
  return entropy_of_qubits(state, map.union_qubits(mask)).bits;
}

long long multipartite_information_exact(const StabilizerState& state, const QubitRegionMap& map,
                                         int threads) {
  const int n = map.n_subsystems();
  if (n > kMaxExactSubsystems) {
    throw Error(ErrorCode::TooManySubsystems,
                std::to_string(n) + " subsystems, exact limit is " +
                    std::to_string(kMaxExactSubsystems));
  }
  if (n == 0) throw Error(ErrorCode::ValidationError, "no subsystems");
  const std::size_t count = (std::size_t{1} << n) - 1;
  const std::size_t chunks = std::max<std::size_t>(1, static_cast<std::size_t>(threads));
  std::vector<long long> partial(chunks, 0);
  const std::size_t step = (count + chunks - 1) / chunks;
  detail::parallel_for(chunks, threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c) {
      long long acc = 0;
      for (std::size_t i = c * step; i < std::min(count, (c + 1) * step); ++i) {
        const SubsetMask m = static_cast<SubsetMask>(i + 1);
        const long long s = union_entropy_bits(state, map, m);
        acc += (std::popcount(m) % 2 == 1) ? s : -s;
      }
      partial[c] = acc;
    }
  });
  return std::accumulate(partial.begin(), partial.end(), 0LL);
}

}  // namespace topo
