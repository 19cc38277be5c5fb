#include "topo/shapes.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "topo/error.hpp"

namespace topo::shapes {

namespace {

constexpr int kThickness = 3;
constexpr int kMargin = 4;
// Arcs shorter than this can leave a corner block between two arcs that
// then meet diagonally at the hole's corner.
constexpr int kMinArc = kThickness + 2;

class Canvas {
 public:
  Canvas(int w, int h) : w_(w), h_(h), cells_(static_cast<std::size_t>(w) * h, kOutside) {}

  void set(int x, int y, int label) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) {
      throw Error(ErrorCode::ValidationError, "shape cell off canvas");
    }
    cells_[static_cast<std::size_t>(y) * w_ + x] = label;
  }
  int get(int x, int y) const {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return kOutside;
    return cells_[static_cast<std::size_t>(y) * w_ + x];
  }

  // Crops to the occupied bounding box and renumbers labels by first
  // appearance of their original id order.
  GridCss finish(std::string name) const {
    int x0 = w_, y0 = h_, x1 = -1, y1 = -1;
    std::map<int, int> ids;
    for (int y = 0; y < h_; ++y) {
      for (int x = 0; x < w_; ++x) {
        const int l = get(x, y);
        if (l == kOutside) continue;
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
        ids.emplace(l, 0);
      }
    }
    int next = 0;
    for (auto& [_, v] : ids) v = next++;
    const int w = x1 - x0 + 1, h = y1 - y0 + 1;
    std::vector<int> labels(static_cast<std::size_t>(w) * h, kOutside);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int l = get(x + x0, y + y0);
        if (l != kOutside) labels[static_cast<std::size_t>(y) * w + x] = ids.at(l);
      }
    }
    return GridCss::from_labels(w, h, std::move(labels), std::move(name));
  }

 private:
  int w_, h_;
  std::vector<int> cells_;
};

// Rectangular ring of thickness t. Each slice across the band has a cyclic
// coordinate s in [0, P): top band left to right, right band downwards,
// bottom band right to left, left band upwards.
class Ring {
 public:
  Ring(int w, int h) : w_(w), h_(h), t_(kThickness) {
    if (w < 2 * t_ + 1 || h < 2 * t_ + 1) throw Error(ErrorCode::ValidationError, "ring too small");
  }

  int perimeter() const { return 2 * w_ + 2 * h_ - 4 * t_; }
  int width() const { return w_; }
  int height() const { return h_; }

  // Slice of ring cell (x, y) relative to the ring box, or -1 inside the hole.
  int slice(int x, int y) const {
    const int t = t_;
    if (y < t) return x;
    if (x >= w_ - t) return w_ + (y - t);
    if (y >= h_ - t) return w_ + h_ - t + (w_ - t - 1 - x);
    if (x < t) return 2 * w_ + h_ - 2 * t + (h_ - t - 1 - y);
    return -1;
  }
  int top_slice(int x) const { return x; }
  int bottom_slice(int x) const { return w_ + h_ - t_ + (w_ - t_ - 1 - x); }

  // Arc id per slice: the arc holding `ref` is 0, then increasing with s.
  void set_cuts(std::vector<int> cuts, int ref) {
    const int p = perimeter();
    for (int& c : cuts) c = ((c % p) + p) % p;
    std::sort(cuts.begin(), cuts.end());
    if (std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end()) {
      throw Error(ErrorCode::ValidationError, "coinciding arc cuts");
    }
    const int k = static_cast<int>(cuts.size());
    auto raw = [&](int s) {
      auto it = std::upper_bound(cuts.begin(), cuts.end(), s);
      int i = static_cast<int>(it - cuts.begin()) - 1;
      return i < 0 ? k - 1 : i;
    };
    const int base = raw(((ref % p) + p) % p);
    arc_.assign(static_cast<std::size_t>(p), 0);
    for (int s = 0; s < p; ++s) arc_[static_cast<std::size_t>(s)] = (raw(s) - base + k) % k;
    n_arcs_ = k;
  }

  int arc_of_slice(int s) const { return arc_.at(static_cast<std::size_t>(s)); }
  int n_arcs() const { return n_arcs_; }

  // Contiguous top-band columns of arc a (ring coordinates).
  std::pair<int, int> top_span(int a) const {
    int lo = -1, hi = -1;
    for (int x = 0; x < w_; ++x) {
      if (arc_of_slice(top_slice(x)) == a) {
        if (lo < 0) lo = x;
        hi = x;
      }
    }
    if (lo < 0) throw Error(ErrorCode::ValidationError, "arc has no top-band columns");
    return {lo, hi};
  }

  void paint(Canvas& c, int ox, int oy, const std::vector<int>& label_of_arc) const {
    for (int y = 0; y < h_; ++y) {
      for (int x = 0; x < w_; ++x) {
        const int s = slice(x, y);
        if (s < 0) continue;
        const int l = label_of_arc.at(static_cast<std::size_t>(arc_of_slice(s)));
        if (l != kOutside) c.set(x + ox, y + oy, l);
      }
    }
  }

 private:
  int w_, h_, t_;
  int n_arcs_ = 0;
  std::vector<int> arc_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::ValidationError, what);
}

std::vector<int> even_cuts(int p, int k, int start) {
  std::vector<int> cuts;
  for (int i = 0; i < k; ++i) cuts.push_back(start + static_cast<int>((static_cast<long>(i) * p) / k));
  return cuts;
}

std::vector<int> identity_labels(int k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

// Ring whose arcs 0 and 1 each own six top-band columns; the remaining
// arcs share the rest evenly.
Ring featured_ring(int k) {
  require(k >= 3, "ring needs at least 3 arcs");
  constexpr int span = 6;
  const int w = 2 * span + 2 * kThickness + 2;
  int h = 2 * kThickness + 3;
  Ring probe(w, h);
  while (probe.perimeter() - 2 * span < kMinArc * (k - 2)) {
    h += 2;
    probe = Ring(w, h);
  }
  Ring r(w, h);
  const int s0 = kThickness;
  std::vector<int> cuts{s0, s0 + span};
  const int rest_start = s0 + 2 * span;
  const int rest = r.perimeter() - 2 * span;
  for (int i = 0; i < k - 2; ++i) {
    cuts.push_back(rest_start + static_cast<int>((static_cast<long>(i) * rest) / (k - 2)));
  }
  r.set_cuts(cuts, s0);
  return r;
}

Ring plain_ring(int k) {
  require(k >= 2, "ring needs at least 2 arcs");
  int side = 9;
  while (4 * side - 4 * kThickness < kMinArc * k) ++side;
  Ring r(side, side);
  r.set_cuts(even_cuts(r.perimeter(), k, kThickness), kThickness);
  return r;
}

Canvas canvas_for(const Ring& r) {
  return Canvas(r.width() + 2 * kMargin, r.height() + 2 * kMargin);
}

std::string with_n(const char* stem, int n) { return std::string(stem) + "-N" + std::to_string(n); }

}  // namespace

GridCss annulus(int n) {
  require(n >= 2, "annulus needs n >= 2");
  Ring r = n >= 3 ? featured_ring(n) : plain_ring(n);
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, identity_labels(n));
  return c.finish(with_n("annulus", n));
}

GridCss open_chain(int n) {
  require(n >= 1, "chain needs n >= 1");
  Ring r = plain_ring(n + 1);
  std::vector<int> labels = identity_labels(n + 1);
  labels.back() = kOutside;
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, labels);
  return c.finish(with_n("open-chain", n));
}

GridCss annulus_with_island(int n) {
  require(n >= 4, "island variant needs n >= 4");
  Ring r = featured_ring(n - 1);
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, identity_labels(n - 1));
  const int x0 = kMargin + r.width() + 1;
  const int y0 = kMargin + r.height() / 2 - 1;
  for (int y = y0; y < y0 + 2; ++y)
    for (int x = x0; x < x0 + 2; ++x) c.set(x, y, n - 1);
  return c.finish(with_n("annulus-island", n));
}

GridCss annulus_with_appendage(int n) {
  require(n >= 4, "appendage variant needs n >= 4");
  Ring r = featured_ring(n - 1);
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, identity_labels(n - 1));
  auto [lo, hi] = r.top_span(0);
  const int mid = (lo + hi) / 2;
  for (int y = kMargin - 2; y < kMargin; ++y)
    for (int x = mid; x < mid + 2; ++x) c.set(x + kMargin, y, n - 1);
  return c.finish(with_n("annulus-appendage", n));
}

GridCss annulus_with_hole(int n, int arc) {
  require(arc == 0 || arc == 1, "feature arc must be 0 or 1");
  Ring r = featured_ring(n);
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, identity_labels(n));
  auto [lo, hi] = r.top_span(arc);
  c.set(kMargin + (lo + hi) / 2, kMargin + kThickness / 2, kOutside);
  return c.finish(with_n("annulus-hole", n));
}

GridCss annulus_with_self_handle(int n, int arc) {
  require(arc == 0 || arc == 1, "feature arc must be 0 or 1");
  Ring r = featured_ring(n);
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, identity_labels(n));
  auto [lo, hi] = r.top_span(arc);
  const int a = kMargin + lo + 1, b = kMargin + hi - 1;
  for (int y = kMargin - 3; y < kMargin; ++y) {
    c.set(a, y, arc);
    c.set(b, y, arc);
  }
  for (int x = a; x <= b; ++x) c.set(x, kMargin - 3, arc);
  return c.finish(with_n("annulus-self-handle", n));
}

GridCss annulus_with_nn_handle(int n) {
  Ring r = featured_ring(n);
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, identity_labels(n));
  auto [lo0, hi0] = r.top_span(0);
  auto [lo1, hi1] = r.top_span(1);
  const int a = kMargin + (lo0 + hi0) / 2, b = kMargin + (lo1 + hi1) / 2;
  const int split = (a + b) / 2;
  for (int y = kMargin - 3; y < kMargin; ++y) {
    c.set(a, y, 0);
    c.set(b, y, 1);
  }
  for (int x = a; x <= b; ++x) c.set(x, kMargin - 3, x <= split ? 0 : 1);
  return c.finish(with_n("annulus-nn-handle", n));
}

GridCss annulus_with_further_handle(int n, int right) {
  const int left = n - 2 - right;
  require(right >= 1 && left >= 1, "further handle needs arcs on both sides");
  const int side = 4 + 3 * n;
  Ring r(side, side);
  const int p = r.perimeter();
  const int xb = side / 2;
  const int s1 = r.top_slice(xb), s2 = r.bottom_slice(xb);
  std::vector<int> cuts;
  auto spread = [&](int from, int to, int count) {
    for (int i = 0; i < count; ++i) {
      cuts.push_back(from + static_cast<int>((static_cast<long>(i) * (to - from)) / (count - 1)));
    }
  };
  spread(s1 + 2, s2 - 2, right + 1);
  spread(s2 + 2, s1 + p - 2, left + 1);
  r.set_cuts(cuts, s1);
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, identity_labels(n));
  const int top = r.arc_of_slice(s1), bottom = r.arc_of_slice(s2);
  const int y0 = kThickness, y1 = side - kThickness;
  const int mid = (y0 + y1) / 2;
  for (int y = y0; y < y1; ++y) c.set(kMargin + xb, kMargin + y, y < mid ? top : bottom);
  return c.finish("annulus-further-handle-N" + std::to_string(n) + "-r" + std::to_string(right));
}

GridCss split_annulus() {
  Ring r = plain_ring(4);
  Canvas c = canvas_for(r);
  r.paint(c, kMargin, kMargin, {0, 1, 2, 1});
  return c.finish("split-annulus");
}

GridCss figure_eight() {
  return parse_ascii_grid(
      "BBBBBAADDDDD\n"
      "BBBBBAADDDDD\n"
      "BB...AA...DD\n"
      "BB...AA...DD\n"
      "CC...AA...EE\n"
      "CC...AA...EE\n"
      "CCCCCAAEEEEE\n"
      "CCCCCAAEEEEE\n",
      "figure-eight");
}

GridCss hole_lattice() {
  constexpr int rows = 3, cols = 4, period = 6, wall = 3;
  const int w = period * (cols - 1) + wall, h = period * (rows - 1) + wall;
  Canvas c(w, h);
  auto junction = [&](int i, int j) { return i * cols + j; };
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (int y = 0; y < wall; ++y)
        for (int x = 0; x < wall; ++x) c.set(period * j + x, period * i + y, junction(i, j));
  // Walls listed here become their own subsystem in the middle slice.
  const std::vector<std::pair<bool, std::pair<int, int>>> split = {
      {true, {0, 0}}, {true, {1, 2}}, {true, {2, 1}},
      {false, {0, 1}}, {false, {0, 3}}, {false, {1, 0}}};
  int next = rows * cols;
  auto is_split = [&](bool horizontal, int i, int j) {
    return std::find(split.begin(), split.end(), std::pair{horizontal, std::pair{i, j}}) !=
           split.end();
  };
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) {
      const int seg = is_split(true, i, j) ? next++ : -1;
      for (int k = 0; k < period - wall; ++k) {
        const int l = k == 0 ? junction(i, j)
                    : k == 2 ? junction(i, j + 1)
                    : (seg >= 0 ? seg : junction(i, j));
        for (int y = 0; y < wall; ++y) c.set(period * j + wall + k, period * i + y, l);
      }
    }
  }
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int seg = is_split(false, i, j) ? next++ : -1;
      for (int k = 0; k < period - wall; ++k) {
        const int l = k == 0 ? junction(i, j)
                    : k == 2 ? junction(i + 1, j)
                    : (seg >= 0 ? seg : junction(i, j));
        for (int x = 0; x < wall; ++x) c.set(period * j + x, period * i + wall + k, l);
      }
    }
  }
  return c.finish("hole-lattice");
}

GridCss star(int petals) {
  require(petals >= 1 && petals <= 4, "star supports 1..4 petals");
  Canvas c(9, 9);
  for (int y = 3; y < 6; ++y)
    for (int x = 3; x < 6; ++x) c.set(x, y, 0);
  // One-cell-wide stalks off the middle of each hub side.
  const int stalk[4][2][2] = {{{4, 1}, {4, 2}}, {{6, 4}, {7, 4}}, {{4, 6}, {4, 7}}, {{1, 4}, {2, 4}}};
  for (int p = 0; p < petals; ++p)
    for (const auto& cell : stalk[p]) c.set(cell[0], cell[1], p + 1);
  return c.finish("star-" + std::to_string(petals));
}

GridCss random_css(std::uint64_t seed, int n, int width, int height, double fill) {
  require(n >= 1 && n <= 64, "random_css supports 1..64 subsystems");
  require(width >= 1 && height >= 1 && width * height >= n, "grid too small for n seeds");
  std::mt19937_64 rng(seed);
  std::vector<int> labels(static_cast<std::size_t>(width) * height, kOutside);
  auto at = [&](int x, int y) -> int& { return labels[static_cast<std::size_t>(y) * width + x]; };
  auto ok_around = [&](int x, int y) {
    for (int wy = y - 1; wy <= y; ++wy)
      for (int wx = x - 1; wx <= x; ++wx)
        if (has_pinch_at(labels, width, height, wx, wy)) return false;
    return true;
  };
  auto try_set = [&](int x, int y, int l) {
    at(x, y) = l;
    if (ok_around(x, y)) return true;
    at(x, y) = kOutside;
    return false;
  };
  std::uniform_int_distribution<int> rx(0, width - 1), ry(0, height - 1);
  for (int id = 0; id < n; ++id) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      const int x = rx(rng), y = ry(rng);
      if (at(x, y) == kOutside) placed = try_set(x, y, id);
    }
    require(placed, "could not place seed");
  }
  const long target = static_cast<long>(fill * width * height);
  long filled = n;
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  for (long step = 0; step < 50L * width * height && filled < target; ++step) {
    const int id = pick(rng);
    const int x = rx(rng), y = ry(rng);
    if (at(x, y) != kOutside) continue;
    bool touches = false;
    for (int d = 0; d < 4; ++d) {
      const int nx = x + dx[d], ny = y + dy[d];
      if (nx >= 0 && ny >= 0 && nx < width && ny < height && at(nx, ny) == id) touches = true;
    }
    if (touches && try_set(x, y, id)) ++filled;
  }
  return GridCss::from_labels(width, height, std::move(labels),
                              "random-" + std::to_string(seed));
}

}  // namespace topo::shapes
