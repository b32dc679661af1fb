#pragma once

// Brute-force reference implementations. Nothing here calls into the library
// except to read P and pi off a chain.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "phip/chain.hpp"

namespace oracle {

using Set = std::vector<std::size_t>;

inline Eigen::MatrixXd to_eigen(const phip::MarkovChain& c) {
  const auto n = static_cast<Eigen::Index>(c.n());
  Eigen::MatrixXd P(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      P(i, j) = c.P(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return P;
}

// phi_p(S) in long double, straight from the definition.
inline long double phi_p(const phip::MarkovChain& c, const Set& s, double p) {
  std::vector<bool> in(c.n(), false);
  for (auto v : s) in[v] = true;
  long double num = 0, mass = 0;
  for (auto v : s) {
    long double out = 0;
    for (std::size_t u = 0; u < c.n(); ++u)
      if (!in[u]) out += c.P(v, u);
    mass += c.pi(v);
    if (p == 0.0)
      num += out > 0 ? c.pi(v) : 0.0L;
    else
      num += c.pi(v) * (out > 0 ? std::pow(out, static_cast<long double>(p)) : 0.0L);
  }
  return num / mass;
}

// Minimum of phi_p over admissible sets, by recursive inclusion/exclusion.
inline long double phi_p_min(const phip::MarkovChain& c, double p) {
  long double best = std::numeric_limits<long double>::infinity();
  Set cur;
  std::function<void(std::size_t, long double)> rec = [&](std::size_t v, long double mass) {
    if (v == c.n()) {
      if (!cur.empty() && mass <= 0.5L + 1e-12L) best = std::min(best, phi_p(c, cur, p));
      return;
    }
    rec(v + 1, mass);
    cur.push_back(v);
    rec(v + 1, mass + c.pi(v));
    cur.pop_back();
  };
  rec(0, 0);
  return best;
}

// All admissible sets.
inline std::vector<Set> admissible_sets(const phip::MarkovChain& c) {
  std::vector<Set> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << c.n()); ++mask) {
    Set s;
    double mass = 0;
    for (std::size_t v = 0; v < c.n(); ++v)
      if (mask >> v & 1) {
        s.push_back(v);
        mass += c.pi(v);
      }
    if (mass <= 0.5 + 1e-12) out.push_back(s);
  }
  return out;
}

// Stationary distribution as the left Perron vector (Eigen general solver).
inline std::vector<double> stationary(const Eigen::MatrixXd& P) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(P.transpose());
  Eigen::Index k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double d = std::abs(es.eigenvalues()(i) - std::complex<double>(1.0, 0.0));
    if (d < best) {
      best = d;
      k = i;
    }
  }
  Eigen::VectorXd v = es.eigenvectors().col(k).real();
  v /= v.sum();
  return {v.data(), v.data() + v.size()};
}

// Sorted spectrum of I - (S + S^T)/2, S = Pi^{1/2} P Pi^{-1/2}.
inline std::vector<double> laplacian_spectrum(const phip::MarkovChain& c) {
  const auto n = static_cast<Eigen::Index>(c.n());
  Eigen::MatrixXd S(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
      S(i, j) = std::sqrt(c.pi(a)) * c.P(a, b) / std::sqrt(c.pi(b));
    }
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n) - 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double lambda2(const phip::MarkovChain& c) { return laplacian_spectrum(c)[1]; }

// Eigenvalues of a symmetric circulant from its first row via the dense
// solver on the materialized matrix.
inline double circulant_lambda2_dense(const std::vector<double>& row) {
  const auto n = static_cast<Eigen::Index>(row.size());
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = row[static_cast<std::size_t>((j - i + n) % n)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  return es.eigenvalues()(1);
}

// G_n weights computed independently in long double.
inline long double ht_C(std::size_t n) {
  long double c = 0;
  for (std::size_t d = 1; d < n; ++d) {
    const long double m = static_cast<long double>(std::min(d, n - d));
    c += 1.0L / (m * m * m);
  }
  return c;
}

// Per-start-set expansion of the block lower bound: for every A_i the sum over
// j of log|[A_i,A_j]|+1, log|[B_i,B_{j-1}]|+1, minus log|[B_i,A_j]|+1 and
// log|[A_i,B_{j-1}]|+1, where [B_i, A_i] is the empty block and
// [A_i, B_{i-1}] the whole cycle.
inline long double blocks_h(const std::vector<std::size_t>& sizes) {
  const std::size_t k = sizes.size() / 2;
  const std::size_t m = sizes.size();
  // Position of set index t: A_i = 2(i-1), B_i = 2(i-1)+1 (0-based i here).
  auto span = [&](std::size_t from, std::size_t to) -> long double {
    // Sets from..to clockwise inclusive; empty if to == from - 1 (mod m).
    std::size_t total = 0;
    for (std::size_t t = from;; t = (t + 1) % m) {
      total += sizes[t];
      if (t == to) break;
    }
    return static_cast<long double>(total);
  };
  long double h = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t Ai = 2 * i, Bi = 2 * i + 1;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t Aj = 2 * j;
      const std::size_t Bjm1 = (2 * j + m - 1) % m;  // B_{j-1}
      h += std::log(span(Ai, Aj) + 1);
      h += std::log(span(Bi, Bjm1) + 1);
      // [B_i, A_j]: empty when j == i.
      h -= j == i ? 0.0L : std::log(span(Bi, Aj) + 1);
      h -= std::log(span(Ai, Bjm1) + 1);
    }
  }
  return h;
}

// phi_{1/2} of the arc {0..l-1} of G_n on the materialized weights.
inline long double arc_phi_half(std::size_t n, std::size_t l) {
  const long double C = ht_C(n);
  long double s = 0;
  for (std::size_t v = 0; v < l; ++v) {
    long double out = 0;
    for (std::size_t u = l; u < n; ++u) {
      const std::size_t d = u - v;
      const long double m = static_cast<long double>(std::min(d, n - d));
      out += 1.0L / (C * m * m * m);
    }
    s += std::sqrt(out);
  }
  return s / static_cast<long double>(l);
}

}  // namespace oracle
