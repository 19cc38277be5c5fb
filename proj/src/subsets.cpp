#include "topo/subsets.hpp"

#include <bit>
#include <limits>
#include <map>
#include <numeric>

#include "parallel.hpp"
#include "topo/error.hpp"
#include "topo/topology.hpp"

namespace topo {

class SubsetBuilder {
 public:
  SubsetBuilder(const GridCss& css, SubsetOptions options) : css_(css), options_(options) {}

  SubsetTopology run() {
    const int n = css_.n_subsystems();
    if (n > kMaxEnumeratedSubsystems) {
      throw Error(ErrorCode::TooManySubsystems,
                  std::to_string(n) + " subsystems, enumeration limit is " +
                      std::to_string(kMaxEnumeratedSubsystems));
    }
    out_.n_ = n;
    out_.strategy_ = options_.strategy;
    if (out_.strategy_ == JStrategy::Auto) {
      out_.strategy_ = n <= kFloodFillLimit ? JStrategy::FloodFill : JStrategy::Valuation;
    }
    const std::size_t size = std::size_t{1} << n;
    out_.j_.assign(size, 0);
    out_.perimeter_.assign(size, 0);
    if (out_.strategy_ == JStrategy::FloodFill) flood_fill();
    else valuation();
    return std::move(out_);
  }

 private:
  void store(SubsetMask mask, long j, long perimeter) {
    if (j > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::ValidationError, "J exceeds table range");
    }
    out_.j_[mask] = static_cast<std::uint16_t>(j);
    out_.perimeter_[mask] = static_cast<std::uint32_t>(perimeter);
  }

  // Depth-first over masks; each child adds one subsystem above the highest
  // bit already present, so every mask is visited once.
  void grow(SubsetMask mask, const Region& region, int next) {
    for (int b = next; b < out_.n_; ++b) {
      const SubsetMask child = mask | (SubsetMask{1} << b);
      const Region r = region | css_.subsystem(b);
      store(child, boundary_component_count(r), perimeter_links(r));
      grow(child, r, b + 1);
    }
  }

  void flood_fill() {
    const int n = out_.n_;
    detail::parallel_for(static_cast<std::size_t>(n), options_.threads,
                         [&](std::size_t begin, std::size_t end) {
                           for (std::size_t b = begin; b < end; ++b) {
                             const SubsetMask m = SubsetMask{1} << b;
                             const Region& r = css_.subsystem(static_cast<int>(b));
                             store(m, boundary_component_count(r), perimeter_links(r));
                             grow(m, r, static_cast<int>(b) + 1);
                           }
                         });
  }

  SubsetMask label_bit(int x, int y) const {
    const int l = css_.label(x, y);
    return l == kOutside ? 0 : SubsetMask{1} << l;
  }

  void valuation() {
    const int n = out_.n_;
    const int w = css_.width();
    const int h = css_.height();
    const std::size_t size = std::size_t{1} << n;
    const SubsetMask all = css_.all_mask();

    // chi of a union, counted on the closed-square cell complex: V - E + F.
    // Vertex and edge counts of a union are "items whose label set meets Q",
    // obtained from subset sums over the complement of Q.
    std::map<SubsetMask, long> weight;  // +1 per vertex, -1 per edge
    long total = 0;
    for (int py = 0; py <= h; ++py) {
      for (int px = 0; px <= w; ++px) {
        const SubsetMask k = label_bit(px - 1, py - 1) | label_bit(px, py - 1) |
                             label_bit(px - 1, py) | label_bit(px, py);
        if (k != 0) {
          ++weight[k];
          ++total;
        }
      }
    }
    std::vector<long> out_links(static_cast<std::size_t>(n), 0);
    std::vector<std::map<int, long>> shared(static_cast<std::size_t>(n));
    auto edge = [&](int ax, int ay, int bx, int by) {
      const int a = css_.label(ax, ay);
      const int b = css_.label(bx, by);
      const SubsetMask k = label_bit(ax, ay) | label_bit(bx, by);
      if (k == 0) return;
      --weight[k];
      --total;
      if (a == b) return;
      if (a == kOutside) ++out_links[static_cast<std::size_t>(b)];
      else if (b == kOutside) ++out_links[static_cast<std::size_t>(a)];
      else {
        ++shared[static_cast<std::size_t>(a)][b];
        ++shared[static_cast<std::size_t>(b)][a];
      }
    };
    for (int y = 0; y < h; ++y)
      for (int x = -1; x < w; ++x) edge(x, y, x + 1, y);
    for (int y = -1; y < h; ++y)
      for (int x = 0; x < w; ++x) edge(x, y, x, y + 1);

    std::vector<std::int32_t> zeta(size, 0);
    for (auto [k, v] : weight) zeta[k] += static_cast<std::int32_t>(v);
    for (int bit = 0; bit < n; ++bit) {
      const std::size_t b = std::size_t{1} << bit;
      for (std::size_t s = 0; s < size; ++s) {
        if (s & b) zeta[s] += zeta[s ^ b];
      }
    }
    std::vector<long> cells(static_cast<std::size_t>(n));
    for (int id = 0; id < n; ++id) cells[static_cast<std::size_t>(id)] = static_cast<long>(css_.subsystem(id).size());

    // Pieces: connected components of individual subsystems.
    std::vector<int> piece_of(static_cast<std::size_t>(w) * h, -1);
    std::vector<std::vector<int>> pieces_of_label(static_cast<std::size_t>(n));
    int pieces = 0;
    for (int id = 0; id < n; ++id) {
      const Components c = connected_components(css_.subsystem(id));
      for (std::size_t i = 0; i < c.labeling.size(); ++i) {
        if (c.labeling[i] >= 0) piece_of[i] = pieces + c.labeling[i];
      }
      for (int k = 0; k < c.count; ++k) pieces_of_label[static_cast<std::size_t>(id)].push_back(pieces + k);
      pieces += c.count;
    }
    std::vector<std::vector<int>> piece_adj(static_cast<std::size_t>(pieces));
    auto link = [&](int ax, int ay, int bx, int by) {
      if (bx >= w || by >= h) return;
      const int pa = piece_of[static_cast<std::size_t>(ay) * w + ax];
      const int pb = piece_of[static_cast<std::size_t>(by) * w + bx];
      if (pa < 0 || pb < 0 || pa == pb) return;
      piece_adj[static_cast<std::size_t>(pa)].push_back(pb);
      piece_adj[static_cast<std::size_t>(pb)].push_back(pa);
    };
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        link(x, y, x + 1, y);
        link(x, y, x, y + 1);
      }
    }
    for (auto& a : piece_adj) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }

    detail::parallel_for(size - 1, options_.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<int> parent(static_cast<std::size_t>(pieces));
      std::vector<char> active(static_cast<std::size_t>(pieces));
      auto find = [&](int p) {
        while (parent[static_cast<std::size_t>(p)] != p) {
          parent[static_cast<std::size_t>(p)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(p)])];
          p = parent[static_cast<std::size_t>(p)];
        }
        return p;
      };
      for (std::size_t idx = begin; idx < end; ++idx) {
        const SubsetMask q = idx + 1;
        long f = 0;
        int b0 = 0;
        std::fill(active.begin(), active.end(), 0);
        for (int id = 0; id < n; ++id) {
          if (!((q >> id) & 1u)) continue;
          f += cells[static_cast<std::size_t>(id)];
          for (int p : pieces_of_label[static_cast<std::size_t>(id)]) {
            active[static_cast<std::size_t>(p)] = 1;
            parent[static_cast<std::size_t>(p)] = p;
            ++b0;
          }
        }
        for (int p = 0; p < pieces; ++p) {
          if (!active[static_cast<std::size_t>(p)]) continue;
          for (int o : piece_adj[static_cast<std::size_t>(p)]) {
            if (o < p || !active[static_cast<std::size_t>(o)]) continue;
            const int rp = find(p);
            const int ro = find(o);
            if (rp != ro) {
              parent[static_cast<std::size_t>(ro)] = rp;
              --b0;
            }
          }
        }
        const long chi = (total - zeta[all ^ q]) + f;
        out_.j_[q] = static_cast<std::uint16_t>(2 * b0 - chi);
      }
    });

    // Perimeter grows by one subsystem at a time, removing the lowest bit.
    std::vector<long> own(static_cast<std::size_t>(n));
    for (int id = 0; id < n; ++id) {
      long t = out_links[static_cast<std::size_t>(id)];
      for (auto [other, count] : shared[static_cast<std::size_t>(id)]) t += count;
      own[static_cast<std::size_t>(id)] = t;
    }
    for (std::size_t q = 1; q < size; ++q) {
      const int b = std::countr_zero(q);
      const std::size_t rest = q & (q - 1);
      long p = static_cast<long>(out_.perimeter_[rest]) + own[static_cast<std::size_t>(b)];
      for (auto [other, count] : shared[static_cast<std::size_t>(b)]) {
        if ((rest >> other) & 1u) p -= 2 * count;
      }
      out_.perimeter_[q] = static_cast<std::uint32_t>(p);
    }
  }

  const GridCss& css_;
  SubsetOptions options_;
  SubsetTopology out_;
};

SubsetTopology SubsetTopology::compute(const GridCss& css, SubsetOptions options) {
  return SubsetBuilder(css, options).run();
}

}  // namespace topo
