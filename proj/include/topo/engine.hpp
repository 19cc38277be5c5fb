#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topo/grid.hpp"
#include "topo/subsets.hpp"

namespace topo {

enum class LogBase { E, Two };

// Entropy of a region in a zero-correlation-length topological phase:
//   S = alpha * n - J * log D,
// with n the perimeter link count and J the boundary component count.
// Entropies and alpha are expressed in the units of `base`.
class EntropyModel {
 public:
  EntropyModel(double quantum_dimension, double alpha, LogBase base = LogBase::E);

  // Per-link coefficient from anyon quantum dimensions d_k:
  //   alpha = -sum_k (d_k^2 / D) log(d_k^2 / D).
  // The weight is d_k^2 / D rather than the probability d_k^2 / D^2; alpha
  // cancels from every multipartite quantity, so the choice only shows up in
  // single-region entropies. Requires sum_k d_k^2 = D^2.
  static EntropyModel from_anyons(double quantum_dimension, std::vector<double> anyon_dims,
                                  LogBase base = LogBase::E);

  double quantum_dimension() const noexcept { return d_; }
  double alpha() const noexcept { return alpha_; }
  LogBase base() const noexcept { return base_; }
  const std::optional<std::vector<double>>& anyon_dims() const noexcept { return anyons_; }

  double log(double x) const;
  double s_topo() const { return log(d_); }
  double entropy(long perimeter, int j) const {
    return alpha_ * static_cast<double>(perimeter) - static_cast<double>(j) * s_topo();
  }

  EntropyModel with_alpha(double alpha) const;

 private:
  double d_;
  double alpha_;
  LogBase base_;
  std::optional<std::vector<double>> anyons_;
};

double entropy_of_region(const EntropyModel& model, const Region& r);

// D = sqrt(|det K|) for an integer K-matrix; throws SingularK.
double quantum_dimension_from_K(const std::vector<std::vector<long long>>& k);

inline constexpr double kRelTolerance = 1e-9;

struct EngineOptions {
  JStrategy strategy = JStrategy::Auto;
  int threads = 1;
  // Throw MismatchBetweenPaths instead of reporting paths_agree = false.
  bool strict = true;
};

struct ConnectivityCount {
  long long c_n = 0;
  SubsetTopology table;
};

// C^N = sum_{m=1}^{N} (-1)^{m-1} sum_{|Q|=m} J(union Q).
ConnectivityCount connectivity_count(const GridCss& css, const EngineOptions& options = {});

struct HoleReport {
  std::vector<int> loop;          // empty when the hole has no valid loop
  std::optional<long long> c;     // C of the loop sub-collection
  std::optional<double> i;        // its multipartite information
  std::string error;
};

struct InfoReport {
  int n_subsystems = 0;
  long long c_n = 0;
  double i_n = 0.0;         // -C^N * S_topo in the model's units
  double i_n_direct = 0.0;  // alternating sum of region entropies
  bool paths_agree = true;
  double s_topo = 0.0;
  LogBase base = LogBase::E;
  std::optional<int> chi;   // absent when the union is disconnected
  int d_nn = 0;
  int n_h = 0;
  std::vector<HoleReport> holes;
  double constraint_sum = 0.0;  // sum of |I| over holes with valid loops
  SubsetTopology table;
};

// N-partite information, evaluated both as -C^N log D and as the direct
// alternating entropy sum. Requires N >= 3 so that perimeter terms cancel.
InfoReport multipartite_information(const EntropyModel& model, const GridCss& css,
                                    const EngineOptions& options = {});

// Information of every sub-collection R (|R| >= 1), indexed by mask, from
// the alternating sum over submasks. N <= 20.
std::vector<double> subset_informations(const EntropyModel& model, const GridCss& css,
                                        const EngineOptions& options = {});

struct AnnularCheck {
  bool pass = false;
  double i_n = 0.0;
  double expected = 0.0;  // (-1)^N * 2 * S_topo
  std::vector<int> loop;
};

AnnularCheck annular_invariant_check(const EntropyModel& model, const GridCss& css,
                                     const EngineOptions& options = {});

struct SubloopRevival {
  int p = 0;
  int q = 0;
  std::vector<int> loop_p;
  std::vector<int> loop_q;
  double i_p = 0.0;
  double i_q = 0.0;
  double i_n = 0.0;
  double expected_p = 0.0;  // (-1)^p * 2 * S_topo
  double expected_q = 0.0;
};

// For a CSS with exactly two holes split by one handle between non-adjacent
// subsystems: the information of each smaller loop. Loops are ordered p <= q
// and must satisfy p + q - 2 = N.
SubloopRevival subloop_revival(const EntropyModel& model, const GridCss& css,
                               const EngineOptions& options = {});

inline constexpr int kMaxRecursionSubsystems = 20;

struct RecursionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  // order_sums[k] = sum over sub-collections R with |R| = k of I^k_R.
  std::vector<double> order_sums;
};

// I^N against its expansion in lower-order informations,
//   I^N = sum_{mu=1}^{N-2} (-1)^{mu-1} sum_{|R|=N-mu} I_R
//         + (-1)^N (sum_i S_i - S_union).
RecursionCheck recursion_check(const EntropyModel& model, const GridCss& css,
                               const EngineOptions& options = {});

struct HoleConstraint {
  std::vector<HoleReport> holes;
  double sum = 0.0;
  double expected = 0.0;  // n_h * 2 * S_topo
  bool pass = false;
  double i_n = 0.0;
  double i_n_expected = 0.0;  // (-1)^{N-1} (chi - 2) S_topo
  bool i_n_pass = false;
  int chi = 0;
};

HoleConstraint hole_constraint(const EntropyModel& model, const GridCss& css,
                               const EngineOptions& options = {});

using UnionEntropy = std::function<double(SubsetMask)>;

// S_union + sum_i (S_{A_i} - S_{A_i u A_{i+1}}) over a cyclic order.
double strong_subadditivity_combination(const UnionEntropy& entropy,
                                        std::span<const int> cyclic_order);

// Same, with analytic entropies and the CSS's annular loop order.
double strong_subadditivity_combination(const EntropyModel& model, const GridCss& css,
                                        const EngineOptions& options = {});

struct EntanglementVector {
  std::vector<int> sizes;          // p = 3..N
  std::vector<double> components;  // normalized |I^p|
  bool zero = false;               // all |I^p| vanish; components left at 0
};

// Family members must all be annular with subsystem counts exactly 3..N.
EntanglementVector entanglement_vector(const EntropyModel& model,
                                       std::span<const GridCss> family,
                                       const EngineOptions& options = {});

// Upper bound |I^N| on the N-party irreducible correlation of an annular CSS.
double irreducible_correlation_bound(const EntropyModel& model, const GridCss& css,
                                     const EngineOptions& options = {});

}  // namespace topo
