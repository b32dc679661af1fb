#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "phip/bounds.hpp"
#include "phip/chain.hpp"
#include "phip/isoperimetry.hpp"

namespace phip {

// ---- G_n: P(i, j) = 1 / (C min(d, n - d)^3), d = |i - j| ----

struct CounterexampleMeta {
  std::size_t n = 0;
  double C = 0.0;
};

struct Counterexample {
  MarkovChain chain;
  CounterexampleMeta meta;
};

/// sum_{d=1}^{n-1} 1 / min(d, n - d)^3.
double ht_normalizer(std::size_t n);
/// 1 / min(d, n - d)^3 for 1 <= d <= n - 1 (unnormalized).
double ht_kernel(std::size_t n, std::size_t d);

/// Circulant chain with uniform pi. Throws TooSmall for n < 3.
Counterexample gen_ht_counterexample(std::size_t n);

/// First row of I - P for G_n.
std::vector<double> ht_first_row_laplacian(std::size_t n);

/// Smallest nontrivial eigenvalue of the symmetric circulant with the given
/// first row, i.e. min over k != 0 of sum_i a_i cos(2 pi k i / n). Evaluated
/// as rowsum - 2 sum_{i>=1} a_i sin^2(pi k i / n). Throws
/// NonSymmetricCirculant unless a_d = a_{n-d}.
double circulant_lambda2_analytic(std::span<const double> first_row);

/// k = 1 eigenvalue of I - P for G_n: 4 sum_{d < n/2} P_d sin^2(pi d / n),
/// plus 2 P_{n/2} when n is even.
double ht_lambda2_closed_form(std::size_t n);

// ---- graph families ----

WeightedGraph cycle_graph(std::size_t n);
WeightedGraph hypercube_graph(std::size_t d);
/// Two copies of K_m on {0..m-1} and {m..2m-1} plus the bridge (m-1, m).
WeightedGraph dumbbell_graph(std::size_t m);
/// Each pair i < j kept with probability `density` and weight in (0, 1]; the
/// ring i ~ i+1 is always present so the graph is connected.
WeightedGraph random_reversible_graph(std::size_t n, double density, std::uint64_t seed);
/// Each ordered pair kept with probability `density`; the directed ring
/// i -> i+1 is always present so the graph is strongly connected.
WeightedGraph random_directed_graph(std::size_t n, double density, std::uint64_t seed);
/// Complete graph with weights P(i, j) of G_n.
WeightedGraph ht_counterexample_graph(std::size_t n);

MarkovChain gen_cycle(std::size_t n);
MarkovChain gen_hypercube(std::size_t d);
MarkovChain gen_dumbbell(std::size_t m);
MarkovChain gen_random_reversible(std::size_t n, double density, std::uint64_t seed);
MarkovChain gen_random_directed(std::size_t n, double density, std::uint64_t seed);

// ---- hypercube ----

inline constexpr std::size_t kMaxHypercubeDim = 14;

/// h_S(x) = number of coordinate flips of x leaving S. Expectations are under
/// the uniform measure on {0,1}^d, restricted to x in S.
struct HypercubeQuantities {
  double poincare_num = 0.0;     // E[h_S 1_S]
  double talagrand_num = 0.0;    // E[sqrt(h_S) 1_S]
  double vertex_boundary = 0.0;  // mu({x in S : h_S(x) > 0})
  double mass = 0.0;             // mu(S)
};

/// Vertices are bitmasks 0..2^d - 1 (bit i is coordinate i).
HypercubeQuantities hypercube_quantities(std::size_t d, const Subset& s);

// ---- block machinery on G_n ----

/// f(S, T) = sum_{u in S} sqrt(P(u, T)).
double f_sqrt_crossweight(const MarkovChain& c, const Subset& a, const Subset& b);

/// Alternating run lengths (a_1, b_1, ..., a_k, b_k) around the cycle.
struct PartitionBlocks {
  std::vector<std::size_t> sizes;

  std::size_t n() const;
  std::size_t k() const { return sizes.size() / 2; }

  /// Runs of a cyclic 2-coloring (true = A), rotated to start at an A-run.
  /// Both colors must occur.
  static PartitionBlocks from_coloring(const std::vector<bool>& in_a);
};

/// h = sum over contiguous blocks [S, T] made of c <= 2k - 1 consecutive sets
/// (single sets included) of (-1)^{c+1} log(|[S, T]| + 1), minus k log(n + 1).
/// Zero sizes are accepted.
double blocks_h(const PartitionBlocks& pb);

/// Drops the single zero entry and merges its two cyclic neighbours.
PartitionBlocks merge_zero_block(const PartitionBlocks& pb);

/// |h(pb) - h(merge_zero_block(pb))|.
double blocks_merge_check(const PartitionBlocks& pb);

/// lhs = blocks_h(blocks), rhs = sqrt(2C) f(A, B) with A the a-runs laid out
/// from vertex 0.
BoundReport lower_bound_fab_check(const MarkovChain& c, const PartitionBlocks& blocks);

// ---- arcs of G_n ----

/// phi_{1/2} of arcs {0, ..., l-1} of G_n without building P.
class ArcEvaluator {
 public:
  explicit ArcEvaluator(std::size_t n);

  std::size_t n() const { return n_; }
  double C() const { return C_; }
  /// sum_{d=lo}^{hi} K(d), 1 <= lo <= hi <= n - 1.
  double kernel_sum(std::size_t lo, std::size_t hi) const;
  double phi_half(std::size_t l) const;

 private:
  std::size_t n_;
  std::size_t half_;
  double C_;
  std::vector<double> tail_;  // tail_[m] = sum_{d=m}^{half} K(d)
};

double arc_phi_half(std::size_t n, std::size_t l);

struct ArcMin {
  std::size_t l = 0;
  double phi = 0.0;
};

/// Minimum of arc_phi_half over 1 <= l <= n/2; an upper bound on phi_{1/2}(G_n).
ArcMin arc_min_phi_half(std::size_t n);

struct ScanRow {
  std::size_t n = 0;
  double lambda2 = 0.0;
  double phi_half_arc = 0.0;
  double rho = 0.0;
  double lambda2_scaled = 0.0;  // lambda2 n^2 / log n
  double phi_scaled = 0.0;      // phi n / log n
};

/// One row per n (each >= 8), ascending. threads = 0 uses hardware concurrency.
std::vector<ScanRow> scaling_scan(std::vector<std::size_t> n_list, unsigned threads = 0);

void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& out);
void write_scan_csv(const std::vector<ScanRow>& rows, const std::string& path);

}  // namespace phip
