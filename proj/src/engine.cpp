#include "topo/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "topo/error.hpp"
#include "topo/topology.hpp"

namespace topo {

namespace {

__extension__ using Int128 = __int128;

int sign_of(SubsetMask mask) { return (std::popcount(mask) % 2 == 1) ? 1 : -1; }

// Neumaier summation.
class Accumulator {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    abs_ += std::abs(v);
  }
  double value() const { return sum_ + comp_; }
  double magnitude() const { return abs_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
};

bool close(double a, double b, double scale) {
  return std::abs(a - b) <= kRelTolerance * std::max(1.0, scale);
}

SubsetOptions subset_options(const EngineOptions& o) { return {o.strategy, o.threads}; }

double information_from_c(const EntropyModel& model, long long c) {
  return static_cast<double>(-c) * model.s_topo();
}

std::vector<HoleReport> hole_reports(const EntropyModel& model, const GridCss& css,
                                     const HoleSet& holes, const EngineOptions& options) {
  std::vector<HoleReport> out;
  for (const auto& hole : holes.holes) {
    HoleReport rep;
    try {
      rep.loop = loop_around_hole(css, hole);
      GridCss sub = css.restricted_to(rep.loop);
      long long c = connectivity_count(sub, options).c_n;
      rep.c = c;
      rep.i = information_from_c(model, c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotACycle) throw;
      rep.loop.clear();
      rep.error = e.what();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

void require_at_least_three(const GridCss& css) {
  if (css.n_subsystems() < 3) {
    throw Error(ErrorCode::TooFewSubsystems,
                "multipartite information needs N >= 3, got " +
                    std::to_string(css.n_subsystems()));
  }
}

}  // namespace

EntropyModel::EntropyModel(double quantum_dimension, double alpha, LogBase base)
    : d_(quantum_dimension), alpha_(alpha), base_(base) {
  if (!(quantum_dimension >= 1.0) || !std::isfinite(quantum_dimension)) {
    throw Error(ErrorCode::ValidationError, "quantum dimension must be finite and >= 1");
  }
  if (!std::isfinite(alpha)) throw Error(ErrorCode::ValidationError, "alpha must be finite");
}

EntropyModel EntropyModel::from_anyons(double quantum_dimension, std::vector<double> anyon_dims,
                                       LogBase base) {
  if (anyon_dims.empty()) throw Error(ErrorCode::ValidationError, "no anyons given");
  double total = 0.0;
  for (double d : anyon_dims) {
    if (!(d >= 1.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::ValidationError, "anyon quantum dimensions must be >= 1");
    }
    total += d * d;
  }
  double dd = quantum_dimension * quantum_dimension;
  if (std::abs(total - dd) > kRelTolerance * std::max(1.0, dd)) {
    std::ostringstream os;
    os << "sum of d_k^2 is " << total << " but D^2 is " << dd;
    throw Error(ErrorCode::ValidationError, os.str());
  }
  EntropyModel m(quantum_dimension, 0.0, base);
  double a = 0.0;
  for (double d : anyon_dims) {
    double w = d * d / quantum_dimension;
    a -= w * m.log(w);
  }
  m.alpha_ = a;
  m.anyons_ = std::move(anyon_dims);
  return m;
}

double EntropyModel::log(double x) const {
  return base_ == LogBase::E ? std::log(x) : std::log2(x);
}

EntropyModel EntropyModel::with_alpha(double alpha) const {
  EntropyModel m = *this;
  if (!std::isfinite(alpha)) throw Error(ErrorCode::ValidationError, "alpha must be finite");
  m.alpha_ = alpha;
  m.anyons_.reset();
  return m;
}

double entropy_of_region(const EntropyModel& model, const Region& r) {
  return model.entropy(perimeter_links(r), boundary_component_count(r));
}

double quantum_dimension_from_K(const std::vector<std::vector<long long>>& k) {
  const std::size_t n = k.size();
  if (n == 0) throw Error(ErrorCode::ValidationError, "empty K matrix");
  for (const auto& row : k) {
    if (row.size() != n) throw Error(ErrorCode::ValidationError, "K matrix must be square");
  }
  // Bareiss elimination, exact for integer input while entries fit in 128 bits.
  std::vector<std::vector<Int128>> a(n, std::vector<Int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = k[i][j];
  int sign = 1;
  Int128 prev = 1;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    if (a[c][c] == 0) {
      std::size_t p = c + 1;
      while (p < n && a[p][c] == 0) ++p;
      if (p == n) throw Error(ErrorCode::SingularK, "det K = 0");
      std::swap(a[p], a[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
      }
    }
    prev = a[c][c];
  }
  Int128 det = a[n - 1][n - 1] * sign;
  if (det == 0) throw Error(ErrorCode::SingularK, "det K = 0");
  if (det < 0) det = -det;
  return std::sqrt(static_cast<double>(det));
}

ConnectivityCount connectivity_count(const GridCss& css, const EngineOptions& options) {
  ConnectivityCount out;
  out.table = SubsetTopology::compute(css, subset_options(options));
  const SubsetMask all = css.all_mask();
  long long c = 0;
  for (SubsetMask q = 1; q <= all; ++q) c += sign_of(q) * out.table.j(q);
  out.c_n = c;
  return out;
}

InfoReport multipartite_information(const EntropyModel& model, const GridCss& css,
                                    const EngineOptions& options) {
  require_at_least_three(css);
  InfoReport rep;
  rep.n_subsystems = css.n_subsystems();
  rep.s_topo = model.s_topo();
  rep.base = model.base();

  ConnectivityCount cc = connectivity_count(css, options);
  rep.c_n = cc.c_n;
  rep.i_n = information_from_c(model, cc.c_n);

  Accumulator acc;
  const SubsetMask all = css.all_mask();
  for (SubsetMask q = 1; q <= all; ++q) {
    acc.add(sign_of(q) * model.entropy(cc.table.perimeter(q), cc.table.j(q)));
  }
  rep.i_n_direct = acc.value();
  rep.paths_agree = close(rep.i_n, rep.i_n_direct, std::abs(rep.i_n));
  if (!rep.paths_agree && options.strict) {
    std::ostringstream os;
    os.precision(17);
    os << "-C^N log D = " << rep.i_n << ", alternating entropy sum = " << rep.i_n_direct;
    throw Error(ErrorCode::MismatchBetweenPaths, os.str());
  }
  rep.table = std::move(cc.table);

  CssGraph g = adjacency_graph(css);
  rep.d_nn = g.d_nn();
  HoleSet holes = find_holes(css);
  rep.n_h = holes.n_h();
  try {
    rep.chi = euler_characteristic(css);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DisconnectedCss) throw;
  }
  rep.holes = hole_reports(model, css, holes, options);
  for (const auto& h : rep.holes) {
    if (h.i) rep.constraint_sum += std::abs(*h.i);
  }
  return rep;
}

std::vector<double> subset_informations(const EntropyModel& model, const GridCss& css,
                                        const EngineOptions& options) {
  const int n = css.n_subsystems();
  if (n > kMaxRecursionSubsystems) {
    throw Error(ErrorCode::TooManySubsystems,
                "sub-collection informations need N <= " +
                    std::to_string(kMaxRecursionSubsystems));
  }
  SubsetTopology t = SubsetTopology::compute(css, subset_options(options));
  const SubsetMask all = css.all_mask();
  // S is linear in (perimeter, J), so the submask sums are done on integers
  // and combined once per sub-collection.
  std::vector<long long> per(all + 1, 0), j(all + 1, 0);
  for (SubsetMask q = 1; q <= all; ++q) {
    per[q] = sign_of(q) * t.perimeter(q);
    j[q] = sign_of(q) * t.j(q);
  }
  for (int bit = 0; bit < n; ++bit) {
    const SubsetMask b = SubsetMask{1} << bit;
    for (SubsetMask q = 1; q <= all; ++q) {
      if (q & b) {
        per[q] += per[q ^ b];
        j[q] += j[q ^ b];
      }
    }
  }
  std::vector<double> info(all + 1, 0.0);
  for (SubsetMask r = 1; r <= all; ++r) info[r] = model.entropy(per[r], static_cast<int>(j[r]));
  return info;
}

AnnularCheck annular_invariant_check(const EntropyModel& model, const GridCss& css,
                                     const EngineOptions& options) {
  AnnularCheck out;
  out.loop = annular_loop(css);
  InfoReport rep = multipartite_information(model, css, options);
  out.i_n = rep.i_n;
  const int n = css.n_subsystems();
  out.expected = (n % 2 == 0 ? 2.0 : -2.0) * model.s_topo();
  out.pass = close(out.i_n, out.expected, std::abs(out.expected));
  return out;
}

SubloopRevival subloop_revival(const EntropyModel& model, const GridCss& css,
                               const EngineOptions& options) {
  HoleSet holes = find_holes(css);
  if (holes.n_h() != 2) {
    throw Error(ErrorCode::PreconditionViolated,
                "subloop revival needs exactly two holes, found " + std::to_string(holes.n_h()));
  }
  std::vector<int> a = loop_around_hole(css, holes.holes[0]);
  std::vector<int> b = loop_around_hole(css, holes.holes[1]);
  if (a.size() > b.size()) std::swap(a, b);
  const int n = css.n_subsystems();
  SubloopRevival out;
  out.p = static_cast<int>(a.size());
  out.q = static_cast<int>(b.size());
  if (out.p + out.q - 2 != n) {
    throw Error(ErrorCode::PreconditionViolated,
                "loop sizes " + std::to_string(out.p) + " and " + std::to_string(out.q) +
                    " do not split N = " + std::to_string(n) + " by a single handle");
  }
  out.loop_p = a;
  out.loop_q = b;
  out.i_p = information_from_c(model, connectivity_count(css.restricted_to(a), options).c_n);
  out.i_q = information_from_c(model, connectivity_count(css.restricted_to(b), options).c_n);
  out.i_n = multipartite_information(model, css, options).i_n;
  out.expected_p = (out.p % 2 == 0 ? 2.0 : -2.0) * model.s_topo();
  out.expected_q = (out.q % 2 == 0 ? 2.0 : -2.0) * model.s_topo();
  return out;
}

RecursionCheck recursion_check(const EntropyModel& model, const GridCss& css,
                               const EngineOptions& options) {
  const int n = css.n_subsystems();
  if (n < 2) {
    throw Error(ErrorCode::TooFewSubsystems, "recursion needs N >= 2");
  }
  std::vector<double> info = subset_informations(model, css, options);
  SubsetTopology t = SubsetTopology::compute(css, subset_options(options));
  const SubsetMask all = css.all_mask();

  RecursionCheck out;
  out.order_sums.assign(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<Accumulator> by_order(static_cast<std::size_t>(n) + 1);
  for (SubsetMask r = 1; r <= all; ++r) by_order[std::popcount(r)].add(info[r]);
  for (int k = 1; k <= n; ++k) out.order_sums[k] = by_order[k].value();

  out.lhs = info[all];
  Accumulator rhs;
  for (int mu = 1; mu <= n - 2; ++mu) {
    double term = out.order_sums[n - mu];
    rhs.add(mu % 2 == 1 ? term : -term);
  }
  Accumulator tail;
  for (int i = 0; i < n; ++i) {
    SubsetMask m = SubsetMask{1} << i;
    tail.add(model.entropy(t.perimeter(m), t.j(m)));
  }
  tail.add(-model.entropy(t.perimeter(all), t.j(all)));
  rhs.add(n % 2 == 0 ? tail.value() : -tail.value());
  out.rhs = rhs.value();
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

HoleConstraint hole_constraint(const EntropyModel& model, const GridCss& css,
                               const EngineOptions& options) {
  HoleConstraint out;
  out.chi = euler_characteristic(css);
  HoleSet holes = find_holes(css);
  for (const auto& hole : holes.holes) {
    HoleReport rep;
    rep.loop = loop_around_hole(css, hole);
    long long c = connectivity_count(css.restricted_to(rep.loop), options).c_n;
    rep.c = c;
    rep.i = information_from_c(model, c);
    out.sum += std::abs(*rep.i);
    out.holes.push_back(std::move(rep));
  }
  out.expected = 2.0 * holes.n_h() * model.s_topo();
  out.pass = close(out.sum, out.expected, out.expected);
  const int n = css.n_subsystems();
  out.i_n = multipartite_information(model, css, options).i_n;
  out.i_n_expected = (n % 2 == 1 ? 1.0 : -1.0) * (out.chi - 2) * model.s_topo();
  out.i_n_pass = close(out.i_n, out.i_n_expected, std::abs(out.i_n_expected));
  return out;
}

double strong_subadditivity_combination(const UnionEntropy& entropy,
                                        std::span<const int> cyclic_order) {
  const std::size_t n = cyclic_order.size();
  if (n < 3) throw Error(ErrorCode::TooFewSubsystems, "cyclic order needs >= 3 entries");
  SubsetMask all = 0;
  for (int id : cyclic_order) {
    if (id < 0 || id >= 64) throw Error(ErrorCode::ValidationError, "subsystem id out of range");
    SubsetMask bit = SubsetMask{1} << id;
    if (all & bit) throw Error(ErrorCode::ValidationError, "repeated subsystem in cyclic order");
    all |= bit;
  }
  Accumulator acc;
  acc.add(entropy(all));
  for (std::size_t i = 0; i < n; ++i) {
    SubsetMask a = SubsetMask{1} << cyclic_order[i];
    SubsetMask b = SubsetMask{1} << cyclic_order[(i + 1) % n];
    acc.add(entropy(a));
    acc.add(-entropy(a | b));
  }
  return acc.value();
}

double strong_subadditivity_combination(const EntropyModel& model, const GridCss& css,
                                        const EngineOptions& options) {
  std::vector<int> loop = annular_loop(css);
  SubsetTopology t = SubsetTopology::compute(css, subset_options(options));
  return strong_subadditivity_combination(
      [&](SubsetMask m) { return model.entropy(t.perimeter(m), t.j(m)); }, loop);
}

EntanglementVector entanglement_vector(const EntropyModel& model,
                                       std::span<const GridCss> family,
                                       const EngineOptions& options) {
  if (family.empty()) throw Error(ErrorCode::ValidationError, "empty family");
  std::vector<std::pair<int, double>> entries;
  for (const auto& css : family) {
    annular_loop(css);
    entries.emplace_back(css.n_subsystems(),
                         std::abs(multipartite_information(model, css, options).i_n));
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first != static_cast<int>(i) + 3) {
      throw Error(ErrorCode::ValidationError,
                  "family must contain one annular CSS for each p = 3..N");
    }
  }
  EntanglementVector out;
  const int n = entries.back().first;
  double norm2 = 0.0;
  for (const auto& [p, v] : entries) {
    out.sizes.push_back(p);
    norm2 += v * v;
  }
  out.components.assign(entries.size(), 0.0);
  if (norm2 <= std::numeric_limits<double>::min()) {
    out.zero = true;
    return out;
  }
  double scale = std::sqrt(static_cast<double>(n - 2) / norm2);
  for (std::size_t i = 0; i < entries.size(); ++i) out.components[i] = scale * entries[i].second;
  return out;
}

double irreducible_correlation_bound(const EntropyModel& model, const GridCss& css,
                                     const EngineOptions& options) {
  annular_loop(css);
  return std::abs(multipartite_information(model, css, options).i_n);
}

}  // namespace topo
