#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "phip/matrix.hpp"

namespace phip {

/// Row-sum slack for a transition matrix.
inline constexpr double kRowSumTol = 1e-12;
/// Bound on the stationarity residual max_j |(pi^T P)_j - pi_j|.
inline constexpr double kStationaryTol = 1e-10;
/// Relative tolerance for detailed balance, scaled by the largest flow entry.
inline constexpr double kReversibilityTol = 1e-10;
/// Entries at or below this are structural zeros for connectivity checks.
inline constexpr double kStructuralZero = 1e-15;

enum class ChainOrigin { UndirectedGraph, DirectedGraph, RawMatrix };

std::string_view to_string(ChainOrigin origin);

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge list over vertices 0..n-1. Undirected graphs keep each edge once
/// with u < v (u == v only for flagged self-loops).
struct WeightedGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  bool directed = false;
  bool allow_self_loops = false;

  /// Throws InvalidGraph (or NegativeWeight) on a malformed edge list.
  void validate() const;
};

/// Irreducible finite Markov chain (V, P, pi). Immutable once built; every
/// factory checks the row-sum, stationarity and irreducibility invariants.
class MarkovChain {
 public:
  /// Validates P and solves for its stationary distribution.
  static MarkovChain from_transition(Matrix P, ChainOrigin origin = ChainOrigin::RawMatrix);

  /// Validates a (P, pi) pair produced elsewhere; pi is stored as given.
  static MarkovChain from_parts(Matrix P, std::vector<double> pi, ChainOrigin origin);

  std::size_t n() const noexcept { return pi_.size(); }
  const Matrix& P() const noexcept { return P_; }
  double P(std::size_t i, std::size_t j) const { return P_(i, j); }
  std::span<const double> pi() const noexcept { return pi_; }
  double pi(std::size_t i) const { return pi_[i]; }
  ChainOrigin origin() const noexcept { return origin_; }

 private:
  MarkovChain(Matrix P, std::vector<double> pi, ChainOrigin origin)
      : P_(std::move(P)), pi_(std::move(pi)), origin_(origin) {}

  Matrix P_;
  std::vector<double> pi_;
  ChainOrigin origin_;
};

MarkovChain chain_from_undirected(const WeightedGraph& g);
MarkovChain chain_from_directed(const WeightedGraph& g);

/// Unique stationary distribution of an irreducible row-stochastic matrix.
///
/// Solves (P^T - I) x = 0 with the last equation replaced by sum(x) = 1 using
/// Gaussian elimination with partial pivoting. If that system is singular to
/// working precision, or its residual is above kStationaryTol, falls back to
/// power iteration on (I + P) / 2.
std::vector<double> stationary_distribution(const Matrix& P);

/// max_j |(pi^T P)_j - pi_j|.
double stationary_residual(const Matrix& P, std::span<const double> pi);

bool is_reversible(const MarkovChain& c, double tol = kReversibilityTol);

/// Strong connectivity of the support digraph {(i, j) : P(i, j) > 1e-15}.
bool is_irreducible(const Matrix& P);

/// P -> (1 - delta) I + delta P, pi unchanged. delta must lie in (0, 1].
MarkovChain lazy_transform(const MarkovChain& c, double delta);

/// True when every diagonal entry is at least 1/2.
bool is_lazy(const MarkovChain& c);

}  // namespace phip
