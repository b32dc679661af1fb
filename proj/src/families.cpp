#include "phip/families.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <thread>

#include "phip/error.hpp"

namespace phip {

double ht_kernel(std::size_t n, std::size_t d) {
  const double m = static_cast<double>(std::min(d, n - d));
  return 1.0 / (m * m * m);
}

double ht_normalizer(std::size_t n) {
  // Smallest terms first.
  double c = 0.0;
  for (std::size_t d = n / 2; d >= 1; --d) {
    const double k = ht_kernel(n, d);
    c += (2 * d == n) ? k : 2.0 * k;
  }
  return c;
}

Counterexample gen_ht_counterexample(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::TooSmall, "G_n needs n >= 3");
  const double C = ht_normalizer(n);
  std::vector<double> row(n, 0.0);
  for (std::size_t d = 1; d < n; ++d) row[d] = ht_kernel(n, d) / C;
  Matrix P(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) P(i, j) = row[(j + n - i) % n];
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  return {MarkovChain::from_parts(std::move(P), std::move(pi), ChainOrigin::UndirectedGraph),
          {n, C}};
}

std::vector<double> ht_first_row_laplacian(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::TooSmall, "G_n needs n >= 3");
  const double C = ht_normalizer(n);
  std::vector<double> a(n);
  a[0] = 1.0;
  for (std::size_t d = 1; d < n; ++d) a[d] = -ht_kernel(n, d) / C;
  return a;
}

double circulant_lambda2_analytic(std::span<const double> a) {
  const std::size_t n = a.size();
  if (n < 2) throw Error(ErrorCode::TooSmall, "circulant needs n >= 2");
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  for (std::size_t d = 1; d < n; ++d)
    if (std::abs(a[d] - a[n - d]) > 1e-12 * scale)
      throw Error(ErrorCode::NonSymmetricCirculant, "first row is not symmetric: a_d != a_{n-d}");

  double rowsum = 0.0;
  for (double x : a) rowsum += x;
  double best = std::numeric_limits<double>::infinity();
  const double w = std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double t = std::sin(w * static_cast<double>((k * i) % n));
      s += a[i] * t * t;
    }
    best = std::min(best, rowsum - 2.0 * s);
  }
  return best;
}

double ht_lambda2_closed_form(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::TooSmall, "G_n needs n >= 3");
  const double C = ht_normalizer(n);
  const double w = std::numbers::pi / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t d = 1; 2 * d < n; ++d) {
    const double t = std::sin(w * static_cast<double>(d));
    s += 4.0 * ht_kernel(n, d) / C * t * t;
  }
  if (n % 2 == 0) s += 2.0 * ht_kernel(n, n / 2) / C;
  return s;
}

WeightedGraph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "cycle needs n >= 3");
  WeightedGraph g{n, {}, false, false};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1.0});
  g.edges.push_back({0, n - 1, 1.0});
  return g;
}

WeightedGraph hypercube_graph(std::size_t d) {
  if (d < 1 || d > kMaxHypercubeDim)
    throw Error(ErrorCode::DimensionTooLarge, "hypercube dimension must lie in [1, 14]");
  const std::size_t n = std::size_t{1} << d;
  WeightedGraph g{n, {}, false, false};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t y = x ^ (std::size_t{1} << i);
      if (x < y) g.edges.push_back({x, y, 1.0});
    }
  return g;
}

WeightedGraph dumbbell_graph(std::size_t m) {
  if (m < 3) throw Error(ErrorCode::InvalidArgument, "dumbbell needs m >= 3");
  WeightedGraph g{2 * m, {}, false, false};
  for (std::size_t side = 0; side < 2; ++side)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) g.edges.push_back({side * m + i, side * m + j, 1.0});
  g.edges.push_back({m - 1, m, 1.0});
  return g;
}

namespace {

void check_random_args(std::size_t n, double density) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "random graph needs n >= 3");
  if (!(density >= 0.0 && density <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "density must lie in [0, 1]");
}

}  // namespace

WeightedGraph random_reversible_graph(std::size_t n, double density, std::uint64_t seed) {
  check_random_args(n, density);
  UniformSource rng(seed);
  WeightedGraph g{n, {}, false, false};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ring = j == i + 1 || (i == 0 && j == n - 1);
      if (ring || rng.next() < density) g.edges.push_back({i, j, 1.0 - rng.next()});
    }
  return g;
}

WeightedGraph random_directed_graph(std::size_t n, double density, std::uint64_t seed) {
  check_random_args(n, density);
  UniformSource rng(seed);
  WeightedGraph g{n, {}, true, false};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool ring = j == (i + 1) % n;
      if (ring || rng.next() < density) g.edges.push_back({i, j, 1.0 - rng.next()});
    }
  return g;
}

WeightedGraph ht_counterexample_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::TooSmall, "G_n needs n >= 3");
  const double C = ht_normalizer(n);
  WeightedGraph g{n, {}, false, false};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.edges.push_back({i, j, ht_kernel(n, j - i) / C});
  return g;
}

MarkovChain gen_cycle(std::size_t n) { return chain_from_undirected(cycle_graph(n)); }
MarkovChain gen_hypercube(std::size_t d) { return chain_from_undirected(hypercube_graph(d)); }
MarkovChain gen_dumbbell(std::size_t m) { return chain_from_undirected(dumbbell_graph(m)); }
MarkovChain gen_random_reversible(std::size_t n, double density, std::uint64_t seed) {
  return chain_from_undirected(random_reversible_graph(n, density, seed));
}
MarkovChain gen_random_directed(std::size_t n, double density, std::uint64_t seed) {
  return chain_from_directed(random_directed_graph(n, density, seed));
}

HypercubeQuantities hypercube_quantities(std::size_t d, const Subset& s) {
  if (d > kMaxHypercubeDim)
    throw Error(ErrorCode::DimensionTooLarge, "hypercube dimension must be at most 14");
  if (s.empty()) throw Error(ErrorCode::EmptySet, "subset is empty");
  const std::size_t n = std::size_t{1} << d;
  std::vector<char> in(n, 0);
  for (auto x : s) {
    if (x >= n) throw Error(ErrorCode::InvalidArgument, "subset index out of range");
    if (in[x]) throw Error(ErrorCode::InvalidArgument, "subset has a repeated index");
    in[x] = 1;
  }
  if (2 * s.size() > n) throw Error(ErrorCode::MassTooLarge, "subset has measure above 1/2");

  HypercubeQuantities q;
  std::size_t total_h = 0, boundary = 0;
  double sqrt_sum = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    if (!in[x]) continue;
    std::size_t h = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (!in[x ^ (std::size_t{1} << i)]) ++h;
    total_h += h;
    if (h > 0) ++boundary;
    sqrt_sum += std::sqrt(static_cast<double>(h));
  }
  const double N = static_cast<double>(n);
  q.poincare_num = static_cast<double>(total_h) / N;
  q.talagrand_num = sqrt_sum / N;
  q.vertex_boundary = static_cast<double>(boundary) / N;
  q.mass = static_cast<double>(s.size()) / N;
  return q;
}

double f_sqrt_crossweight(const MarkovChain& c, const Subset& a, const Subset& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "f(S, T) needs nonempty sets");
  std::vector<char> in_b(c.n(), 0);
  for (auto v : b) {
    if (v >= c.n()) throw Error(ErrorCode::InvalidArgument, "subset index out of range");
    in_b[v] = 1;
  }
  for (auto v : a) {
    if (v >= c.n()) throw Error(ErrorCode::InvalidArgument, "subset index out of range");
    if (in_b[v]) throw Error(ErrorCode::OverlappingSets, "sets must be disjoint");
  }
  double f = 0.0;
  for (auto u : a) {
    double out = 0.0;
    for (std::size_t v = 0; v < c.n(); ++v)
      if (in_b[v]) out += c.P(u, v);
    f += std::sqrt(out);
  }
  return f;
}

std::size_t PartitionBlocks::n() const {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  return total;
}

PartitionBlocks PartitionBlocks::from_coloring(const std::vector<bool>& in_a) {
  const std::size_t n = in_a.size();
  std::size_t start = n;
  for (std::size_t v = 0; v < n; ++v)
    if (in_a[v] && !in_a[(v + n - 1) % n]) {
      start = v;
      break;
    }
  if (start == n) throw Error(ErrorCode::InvalidBlocks, "coloring must use both colors");
  PartitionBlocks pb;
  bool color = true;
  std::size_t run = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const bool c = in_a[(start + t) % n];
    if (c != color) {
      pb.sizes.push_back(run);
      run = 0;
      color = c;
    }
    ++run;
  }
  pb.sizes.push_back(run);
  return pb;
}

namespace {

void check_blocks(const PartitionBlocks& pb) {
  if (pb.sizes.empty() || pb.sizes.size() % 2 != 0)
    throw Error(ErrorCode::InvalidBlocks, "blocks must be a nonempty alternating (a, b) sequence");
}

}  // namespace

double blocks_h(const PartitionBlocks& pb) {
  check_blocks(pb);
  const std::size_t m = pb.sizes.size();
  double h = 0.0;
  for (std::size_t start = 0; start < m; ++start) {
    std::size_t size = 0;
    for (std::size_t c = 1; c < m; ++c) {
      size += pb.sizes[(start + c - 1) % m];
      const double term = std::log(static_cast<double>(size) + 1.0);
      h += (c % 2 == 1) ? term : -term;
    }
  }
  return h - static_cast<double>(pb.k()) * std::log(static_cast<double>(pb.n()) + 1.0);
}

PartitionBlocks merge_zero_block(const PartitionBlocks& pb) {
  check_blocks(pb);
  const std::size_t m = pb.sizes.size();
  std::size_t zero = m, zeros = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (pb.sizes[i] == 0) {
      zero = i;
      ++zeros;
    }
  if (zeros == 0) throw Error(ErrorCode::NoZeroBlock, "no block has size zero");
  if (zeros > 1) throw Error(ErrorCode::InvalidBlocks, "more than one zero block");
  if (m == 2) throw Error(ErrorCode::InvalidBlocks, "k = 1 has no merge target");
  // Walk the cycle from the right neighbour round to the left one.
  std::vector<std::size_t> run;
  for (std::size_t t = 1; t < m; ++t) run.push_back(pb.sizes[(zero + t) % m]);
  PartitionBlocks out;
  out.sizes.push_back(run.front() + run.back());
  out.sizes.insert(out.sizes.end(), run.begin() + 1, run.end() - 1);
  return out;
}

double blocks_merge_check(const PartitionBlocks& pb) {
  return std::abs(blocks_h(pb) - blocks_h(merge_zero_block(pb)));
}

BoundReport lower_bound_fab_check(const MarkovChain& c, const PartitionBlocks& blocks) {
  check_blocks(blocks);
  const std::size_t n = c.n();
  if (blocks.n() != n) throw Error(ErrorCode::InvalidBlocks, "block sizes do not sum to n");
  const double C = ht_normalizer(n);
  if (std::abs(c.P(0, 1) - ht_kernel(n, 1) / C) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "chain is not G_n");
  Subset a, b;
  std::size_t v = 0;
  for (std::size_t i = 0; i < blocks.sizes.size(); ++i)
    for (std::size_t t = 0; t < blocks.sizes[i]; ++t) (i % 2 == 0 ? a : b).push_back(v++);
  auto r = make_bound_report("log_sum_lower_bound", blocks_h(blocks),
                             std::sqrt(2.0 * C) * f_sqrt_crossweight(c, a, b));
  r.notes.push_back("k = " + std::to_string(blocks.k()));
  return r;
}

ArcEvaluator::ArcEvaluator(std::size_t n) : n_(n), half_(n / 2) {
  if (n < 3) throw Error(ErrorCode::TooSmall, "G_n needs n >= 3");
  C_ = ht_normalizer(n);
  // Compensated accumulation from the middle outward.
  tail_.assign(half_ + 2, 0.0);
  double sum = 0.0, comp = 0.0;
  for (std::size_t d = half_; d >= 1; --d) {
    const double y = ht_kernel(n, d) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    tail_[d] = sum;
  }
}

double ArcEvaluator::kernel_sum(std::size_t lo, std::size_t hi) const {
  if (lo < 1 || hi >= n_ || lo > hi) throw Error(ErrorCode::InvalidArgument, "bad kernel range");
  double s = 0.0;
  if (lo <= half_) s += tail_[lo] - tail_[std::min(hi, half_) + 1];
  if (hi > half_) {
    const std::size_t from = std::max(lo, half_ + 1);
    // d -> n - d maps (half, hi] onto [n - hi, n - from].
    s += tail_[n_ - hi] - tail_[n_ - from + 1];
  }
  return s;
}

double ArcEvaluator::phi_half(std::size_t l) const {
  if (l < 1 || l > half_) throw Error(ErrorCode::InvalidArgument, "arc length must lie in [1, n/2]");
  double s = 0.0;
  for (std::size_t v = 0; v < l; ++v) s += std::sqrt(kernel_sum(l - v, n_ - 1 - v) / C_);
  return s / static_cast<double>(l);
}

double arc_phi_half(std::size_t n, std::size_t l) { return ArcEvaluator(n).phi_half(l); }

ArcMin arc_min_phi_half(std::size_t n) {
  const ArcEvaluator arc(n);
  ArcMin best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t l = 1; l <= n / 2; ++l) {
    const double phi = arc.phi_half(l);
    if (phi < best.phi) best = {l, phi};
  }
  return best;
}

namespace {

ScanRow scan_one(std::size_t n) {
  ScanRow r;
  r.n = n;
  r.lambda2 = circulant_lambda2_analytic(ht_first_row_laplacian(n));
  r.phi_half_arc = arc_min_phi_half(n).phi;
  r.rho = conjecture_ratio(r.phi_half_arc, r.lambda2);
  const double N = static_cast<double>(n);
  const double logn = std::log(N);
  r.lambda2_scaled = r.lambda2 * N * N / logn;
  r.phi_scaled = r.phi_half_arc * N / logn;
  return r;
}

}  // namespace

std::vector<ScanRow> scaling_scan(std::vector<std::size_t> n_list, unsigned threads) {
  for (auto n : n_list)
    if (n < 8) throw Error(ErrorCode::TooSmall, "scan needs every n >= 8");
  std::sort(n_list.begin(), n_list.end());
  std::vector<ScanRow> rows(n_list.size());
  unsigned workers = threads ? threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::max<std::size_t>(1, n_list.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < n_list.size();) rows[i] = scan_one(n_list[i]);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return rows;
}

void write_scan_csv(const std::vector<ScanRow>& rows, std::ostream& out) {
  out << "n,lambda2,phi_half_arc,rho,lambda2_scaled,phi_scaled\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.16e,%.16e,%.16e,%.16e,%.16e\n", r.n, r.lambda2,
                  r.phi_half_arc, r.rho, r.lambda2_scaled, r.phi_scaled);
    out << buf;
  }
}

void write_scan_csv(const std::vector<ScanRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_scan_csv(rows, out);
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

}  // namespace phip
