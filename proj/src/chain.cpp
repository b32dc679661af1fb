#include "phip/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "phip/error.hpp"

namespace phip {

std::string_view to_string(ChainOrigin origin) {
  switch (origin) {
    case ChainOrigin::UndirectedGraph: return "undirected-graph";
    case ChainOrigin::DirectedGraph: return "directed-graph";
    case ChainOrigin::RawMatrix: return "raw-matrix";
  }
  return "unknown";
}

void WeightedGraph::validate() const {
  if (n == 0) throw Error(ErrorCode::InvalidGraph, "graph has no vertices");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      std::ostringstream os;
      os << "edge (" << e.u << ", " << e.v << ") out of range for n = " << n;
      throw Error(ErrorCode::InvalidGraph, os.str());
    }
    if (!std::isfinite(e.w)) throw Error(ErrorCode::InvalidGraph, "non-finite edge weight");
    if (e.w < 0.0) throw Error(ErrorCode::NegativeWeight, "negative edge weight");
    if (e.u == e.v && !allow_self_loops && e.w > 0.0)
      throw Error(ErrorCode::InvalidGraph, "self-loop present but not allowed");
    if (!directed && e.u > e.v)
      throw Error(ErrorCode::InvalidGraph, "undirected edges must be stored with u < v");
    if (!seen.emplace(e.u, e.v).second)
      throw Error(ErrorCode::InvalidGraph, "duplicate edge");
  }
}

namespace {

void validate_transition(const Matrix& P) {
  if (!P.is_square()) throw Error(ErrorCode::NonSquare, "transition matrix must be square");
  if (P.rows() == 0) throw Error(ErrorCode::InvalidChain, "empty transition matrix");
  for (std::size_t i = 0; i < P.rows(); ++i) {
    double sum = 0.0;
    for (double x : P.row(i)) {
      if (!(x >= 0.0 && x <= 1.0))
        throw Error(ErrorCode::InvalidChain, "transition entries must lie in [0, 1]");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kRowSumTol) {
      std::ostringstream os;
      os << "row " << i << " sums to " << sum;
      throw Error(ErrorCode::InvalidChain, os.str());
    }
  }
}

std::vector<std::vector<std::size_t>> support_lists(const Matrix& P, bool reversed) {
  std::vector<std::vector<std::size_t>> adj(P.rows());
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j)
      if (P(i, j) > kStructuralZero) {
        if (reversed)
          adj[j].push_back(i);
        else
          adj[i].push_back(j);
      }
  return adj;
}

bool reaches_all(const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == adj.size();
}

// Direct solve; empty result when the system is singular to working precision.
std::vector<double> solve_stationary_direct(const Matrix& P) {
  const std::size_t n = P.rows();
  Matrix A(n, n);
  std::vector<double> b(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = P(j, i) - (i == j ? 1.0 : 0.0);
  for (std::size_t j = 0; j < n; ++j) A(n - 1, j) = 1.0;
  b[n - 1] = 1.0;

  double scale = 0.0;
  for (double x : A.data()) scale = std::max(scale, std::abs(x));
  const double tiny = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
    if (std::abs(A(piv, col)) <= tiny) return {};
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = A(r, col) / A(col, col);
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) A(r, j) -= factor * A(col, j);
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t j = r + 1; j < n; ++j) s -= A(r, j) * x[j];
    x[r] = s / A(r, r);
  }
  return x;
}

std::vector<double> solve_stationary_power(const Matrix& P) {
  const std::size_t n = P.rows();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  constexpr std::size_t kMaxIterations = 1'000'000;
  for (std::size_t it = 0; it < kMaxIterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += x[i] * P(i, j);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] = 0.5 * (x[j] + next[j]);
      sum += next[j];
    }
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] /= sum;
      diff = std::max(diff, std::abs(next[j] - x[j]));
    }
    x.swap(next);
    if (diff < 1e-13) break;
  }
  return x;
}

bool acceptable(const Matrix& P, const std::vector<double>& x) {
  if (x.size() != P.rows()) return false;
  for (double v : x)
    if (!(v > 0.0) || !std::isfinite(v)) return false;
  return stationary_residual(P, x) <= kStationaryTol;
}

void normalize(std::vector<double>& x) {
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= sum;
}

}  // namespace

double stationary_residual(const Matrix& P, std::span<const double> pi) {
  const std::size_t n = P.rows();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += pi[i] * P(i, j);
    worst = std::max(worst, std::abs(s - pi[j]));
  }
  return worst;
}

bool is_irreducible(const Matrix& P) {
  if (!P.is_square() || P.rows() == 0) return false;
  return reaches_all(support_lists(P, false)) && reaches_all(support_lists(P, true));
}

std::vector<double> stationary_distribution(const Matrix& P) {
  if (!P.is_square()) throw Error(ErrorCode::NonSquare, "transition matrix must be square");
  if (!is_irreducible(P))
    throw Error(ErrorCode::NotIrreducible, "support digraph is not strongly connected");

  auto x = solve_stationary_direct(P);
  if (!x.empty()) normalize(x);
  if (acceptable(P, x)) return x;

  x = solve_stationary_power(P);
  normalize(x);
  if (acceptable(P, x)) return x;
  throw Error(ErrorCode::NumericalFailure,
              "stationary distribution residual above tolerance after direct and power solves");
}

MarkovChain MarkovChain::from_transition(Matrix P, ChainOrigin origin) {
  validate_transition(P);
  auto pi = stationary_distribution(P);
  return MarkovChain(std::move(P), std::move(pi), origin);
}

MarkovChain MarkovChain::from_parts(Matrix P, std::vector<double> pi, ChainOrigin origin) {
  validate_transition(P);
  if (pi.size() != P.rows())
    throw Error(ErrorCode::InvalidChain, "stationary vector length does not match P");
  double sum = 0.0;
  for (double v : pi) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::InvalidChain, "stationary entries must be strictly positive");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRowSumTol)
    throw Error(ErrorCode::InvalidChain, "stationary vector does not sum to 1");
  if (!is_irreducible(P))
    throw Error(ErrorCode::NotIrreducible, "support digraph is not strongly connected");
  if (stationary_residual(P, pi) > kStationaryTol)
    throw Error(ErrorCode::InvalidChain, "pi is not stationary for P");
  return MarkovChain(std::move(P), std::move(pi), origin);
}

MarkovChain chain_from_undirected(const WeightedGraph& g) {
  if (g.directed) throw Error(ErrorCode::InvalidGraph, "expected an undirected graph");
  g.validate();
  const std::size_t n = g.n;

  Matrix A(n, n);
  for (const auto& e : g.edges) {
    A(e.u, e.v) += e.w;
    if (e.u != e.v) A(e.v, e.u) += e.w;
  }
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (double w : A.row(i)) deg[i] += w;
  for (std::size_t i = 0; i < n; ++i)
    if (!(deg[i] > 0.0)) {
      std::ostringstream os;
      os << "vertex " << i + 1 << " has zero weighted degree";
      throw Error(ErrorCode::IsolatedVertex, os.str());
    }

  // Union-find over the structural support.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& e : g.edges) {
    if (e.w <= kStructuralZero) continue;
    auto a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  if (components != 1) throw Error(ErrorCode::DisconnectedGraph, "graph is not connected");

  Matrix P(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) P(i, j) = A(i, j) / deg[i];
  const double volume = std::accumulate(deg.begin(), deg.end(), 0.0);
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = deg[i] / volume;
  return MarkovChain::from_parts(std::move(P), std::move(pi), ChainOrigin::UndirectedGraph);
}

MarkovChain chain_from_directed(const WeightedGraph& g) {
  if (!g.directed) throw Error(ErrorCode::InvalidGraph, "expected a directed graph");
  g.validate();
  const std::size_t n = g.n;

  Matrix W(n, n);
  for (const auto& e : g.edges) W(e.u, e.v) += e.w;
  Matrix P(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double out = 0.0;
    for (double w : W.row(i)) out += w;
    if (!(out > 0.0)) {
      std::ostringstream os;
      os << "vertex " << i + 1 << " has no outgoing weight";
      throw Error(ErrorCode::SinkVertex, os.str());
    }
    for (std::size_t j = 0; j < n; ++j) P(i, j) = W(i, j) / out;
  }
  if (!is_irreducible(P))
    throw Error(ErrorCode::NotStronglyConnected, "directed graph is not strongly connected");
  return MarkovChain::from_transition(std::move(P), ChainOrigin::DirectedGraph);
}

bool is_reversible(const MarkovChain& c, double tol) {
  const std::size_t n = c.n();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, c.pi(i) * c.P(i, j));
  const double limit = tol * scale;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(c.pi(i) * c.P(i, j) - c.pi(j) * c.P(j, i)) > limit) return false;
  return true;
}

MarkovChain lazy_transform(const MarkovChain& c, double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw Error(ErrorCode::DeltaOutOfRange, "delta must lie in (0, 1]");
  const std::size_t n = c.n();
  Matrix P(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = delta * c.P(i, j) + (i == j ? 1.0 - delta : 0.0);
      P(i, j) = std::min(v, 1.0);
    }
  std::vector<double> pi(c.pi().begin(), c.pi().end());
  return MarkovChain::from_parts(std::move(P), std::move(pi), c.origin());
}

bool is_lazy(const MarkovChain& c) {
  for (std::size_t i = 0; i < c.n(); ++i)
    if (c.P(i, i) < 0.5) return false;
  return true;
}

}  // namespace phip
