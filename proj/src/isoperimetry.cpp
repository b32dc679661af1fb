#include "phip/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>

#include "phip/error.hpp"

namespace phip {

std::string_view to_string(CutMethod method) {
  switch (method) {
    case CutMethod::Exact: return "exact";
    case CutMethod::Sweep: return "sweep";
    case CutMethod::GivenSet: return "given-set";
  }
  return "unknown";
}

namespace {

void check_exponent(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorCode::ExponentOutOfRange, "exponent p must lie in [0, 1]");
}

double power(double x, double p) {
  if (x <= 0.0) return 0.0;
  if (p == 1.0) return x;
  if (p == 0.5) return std::sqrt(x);
  return std::pow(x, p);
}

// Both the enumerator and phi_p_of_set evaluate through these two kernels so
// a set scores bit-identically whichever path produced it.
template <class InSet>
double set_mass(const MarkovChain& c, InSet in) {
  double mass = 0.0;
  for (std::size_t v = 0; v < c.n(); ++v)
    if (in(v)) mass += c.pi(v);
  return mass;
}

template <class InSet>
double set_numerator(const MarkovChain& c, InSet in, double p) {
  const std::size_t n = c.n();
  double num = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in(v)) continue;
    double out = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      if (!in(u)) out += c.P(v, u);
    if (p == 0.0) {
      if (out > 0.0) num += c.pi(v);
    } else {
      num += c.pi(v) * power(out, p);
    }
  }
  return num;
}

struct Best {
  double phi = std::numeric_limits<double>::infinity();
  std::uint64_t mask = 0;

  void offer(double value, std::uint64_t m) {
    if (value < phi || (value == phi && m < mask)) {
      phi = value;
      mask = m;
    }
  }
};

Best scan_masks(const MarkovChain& c, double p, std::uint64_t begin, std::uint64_t end) {
  Best best;
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    auto in = [mask](std::size_t v) { return ((mask >> v) & 1u) != 0; };
    const double mass = set_mass(c, in);
    if (mass > 0.5 + kMassSlack) continue;
    best.offer(set_numerator(c, in, p) / mass, mask);
  }
  return best;
}

Subset subset_from_mask(std::uint64_t mask, std::size_t n) {
  Subset s;
  for (std::size_t v = 0; v < n; ++v)
    if ((mask >> v) & 1u) s.push_back(v);
  return s;
}

}  // namespace

CutResult phi_p_of_set(const MarkovChain& c, const Subset& s, double p) {
  check_exponent(p);
  if (s.empty()) throw Error(ErrorCode::EmptySet, "subset is empty");
  std::vector<char> member(c.n(), 0);
  for (auto v : s) {
    if (v >= c.n()) throw Error(ErrorCode::InvalidArgument, "subset index out of range");
    if (member[v]) throw Error(ErrorCode::InvalidArgument, "subset has a repeated index");
    member[v] = 1;
  }
  auto in = [&member](std::size_t v) { return member[v] != 0; };

  CutResult r;
  r.subset = s;
  std::sort(r.subset.begin(), r.subset.end());
  r.p = p;
  r.pi_mass = set_mass(c, in);
  if (r.pi_mass > 0.5 + kMassSlack)
    throw Error(ErrorCode::MassTooLarge, "subset has stationary mass above 1/2");
  r.numerator = set_numerator(c, in, p);
  r.phi = r.numerator / r.pi_mass;
  r.method = CutMethod::GivenSet;
  return r;
}

CutResult phi_p_exact(const MarkovChain& c, double p, const ExactOptions& options) {
  check_exponent(p);
  const std::size_t n = c.n();
  if (n > options.max_n || n >= 63)
    throw Error(ErrorCode::TooLarge, "exact enumeration cap is n <= " +
                                         std::to_string(std::min<std::size_t>(options.max_n, 62)) +
                                         ", chain has n = " + std::to_string(n));
  const std::uint64_t total = std::uint64_t{1} << n;

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  if (total < (std::uint64_t{1} << 12)) threads = 1;

  Best best;
  if (threads == 1) {
    best = scan_masks(c, p, 1, total);
  } else {
    std::vector<Best> partial(threads);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total - 1 + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = 1 + t * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, t, begin, end] { partial[t] = scan_masks(c, p, begin, end); });
    }
    for (auto& th : pool) th.join();
    for (const auto& b : partial)
      if (b.mask != 0) best.offer(b.phi, b.mask);
  }
  if (best.mask == 0)
    throw Error(ErrorCode::NoAdmissibleSet, "no nonempty subset has stationary mass <= 1/2");

  auto r = phi_p_of_set(c, subset_from_mask(best.mask, n), p);
  r.method = CutMethod::Exact;
  return r;
}

std::vector<Subset> sweep_level_sets(const MarkovChain& c, const SpectralCertificate& cert) {
  const auto f = truncated_eigenvector(cert, c);
  std::vector<double> levels;
  for (double x : f)
    if (x > 0.0) levels.push_back(x);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<Subset> sets;
  sets.reserve(levels.size());
  for (double level : levels) {
    Subset s;
    for (std::size_t v = 0; v < f.size(); ++v)
      if (f[v] >= level) s.push_back(v);
    sets.push_back(std::move(s));
  }
  return sets;
}

double sweep_guarantee(double p, double lambda2) {
  if (!(p > 0.5 && p <= 1.0))
    throw Error(ErrorCode::ExponentOutOfRange, "sweep guarantee needs p in (1/2, 1]");
  return 2.0 * std::sqrt(std::max(lambda2, 0.0) / (2.0 * p - 1.0));
}

CutResult sweep_cut(const MarkovChain& c, double p, const SpectralCertificate& cert) {
  check_exponent(p);
  const auto sets = sweep_level_sets(c, cert);
  CutResult best;
  bool have = false;
  for (const auto& s : sets) {
    auto r = phi_p_of_set(c, s, p);
    if (!have || r.phi < best.phi) {
      best = std::move(r);
      have = true;
    }
  }
  if (!have) throw Error(ErrorCode::DegenerateEigenvector, "no level set to sweep");
  best.method = CutMethod::Sweep;

  if (cert.kind == SpectralKind::ReversibleNormalized && p > 0.5) {
    const double bound = sweep_guarantee(p, cert.lambda2);
    if (best.phi > bound + 1e-8)
      throw Error(ErrorCode::PostconditionFailed,
                  "sweep cut exceeds 2 sqrt(lambda2 / (2p - 1)); eigenvector inaccurate");
  }
  return best;
}

PhiProfile phi_profile(const MarkovChain& c, const Subset& s) {
  return {phi_p_of_set(c, s, 0.0).phi, phi_p_of_set(c, s, 0.5).phi, phi_p_of_set(c, s, 1.0).phi};
}

}  // namespace phip
