#include "phip/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "phip/error.hpp"

namespace phip {

UniformSource::UniformSource(std::uint64_t seed) : engine_(seed) {}

double UniformSource::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t UniformSource::next_index(std::uint64_t bound) {
  return std::min<std::uint64_t>(static_cast<std::uint64_t>(next() * static_cast<double>(bound)),
                                 bound - 1);
}

BoundReport make_bound_report(std::string name, double lhs, double rhs, double tol) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tol = tol;
  r.holds = lhs <= rhs + tol;
  return r;
}

namespace {

SpectralCertificate certificate(const MarkovChain& c, bool use_directed) {
  return use_directed ? lambda2_directed(c) : lambda2_reversible(c);
}

CutResult obtain_phi(const MarkovChain& c, double p, const SpectralCertificate& cert,
                     const BoundOptions& options) {
  switch (options.source) {
    case PhiSource::Exact: return phi_p_exact(c, p, options.exact);
    case PhiSource::Sweep: return sweep_cut(c, p, cert);
    case PhiSource::Auto:
      if (c.n() <= options.exact.max_n) return phi_p_exact(c, p, options.exact);
      return sweep_cut(c, p, cert);
  }
  return phi_p_exact(c, p, options.exact);
}

void attach(BoundReport& r, const CutResult& cut, const SpectralCertificate& cert) {
  r.cut = cut;
  r.lambda2 = cert.lambda2;
  r.lambda2_kind = cert.kind;
  r.notes.push_back(std::string("phi method: ") + std::string(to_string(cut.method)));
}

}  // namespace

BoundReport check_main_theorem(const MarkovChain& c, double p, bool use_directed,
                               const BoundOptions& options) {
  if (!(p > 0.5 && p <= 1.0))
    throw Error(ErrorCode::ExponentOutOfRange, "main theorem needs p in (1/2, 1]");
  const auto cert = certificate(c, use_directed);
  const auto cut = obtain_phi(c, p, cert, options);
  char tag[32];
  std::snprintf(tag, sizeof tag, "[p=%g]", p);
  auto r = make_bound_report(std::string(use_directed ? "main_theorem_directed" : "main_theorem") + tag,
                             cut.phi * cut.phi, 4.0 * cert.lambda2 / (2.0 * p - 1.0));
  attach(r, cut, cert);
  return r;
}

BoundReport check_morris_peres(const MarkovChain& c, bool use_directed,
                               const BoundOptions& options) {
  const auto cert = certificate(c, use_directed);
  const auto cut = obtain_phi(c, 0.5, cert, options);
  const double phi = cut.phi;
  if (!(phi > 0.0 && phi < 2.0))
    throw Error(ErrorCode::LogDomain, "log(2 / phi) needs 0 < phi < 2");
  auto r = make_bound_report(use_directed ? "morris_peres_directed" : "morris_peres",
                             phi * phi / (8.0 * std::log(2.0 / phi)), cert.lambda2);
  attach(r, cut, cert);
  r.notes.push_back(is_lazy(c) ? "chain is lazy" : "chain is not lazy");
  return r;
}

std::pair<BoundReport, BoundReport> check_cheeger(const MarkovChain& c,
                                                  const BoundOptions& options) {
  const auto cert = lambda2_reversible(c);
  const auto cut = obtain_phi(c, 1.0, cert, options);
  auto easy = make_bound_report("cheeger_easy", cert.lambda2 / 2.0, cut.phi);
  auto hard = make_bound_report("cheeger_hard", cut.phi, std::sqrt(2.0 * cert.lambda2));
  attach(easy, cut, cert);
  attach(hard, cut, cert);
  if (cut.method == CutMethod::Sweep)
    easy.notes.push_back("phi from sweep is an upper bound; lower direction not certified");
  return {easy, hard};
}

std::pair<BoundReport, BoundReport> check_chung(const MarkovChain& c, const BoundOptions& options) {
  const auto cert = lambda2_directed(c);
  const auto cut = obtain_phi(c, 1.0, cert, options);
  auto lower = make_bound_report("chung_lower", 0.5 * cut.phi * cut.phi, cert.lambda2);
  auto upper = make_bound_report("chung_upper", cert.lambda2, 2.0 * cut.phi);
  attach(lower, cut, cert);
  attach(upper, cut, cert);
  if (cut.method == CutMethod::Sweep)
    upper.notes.push_back("phi from sweep is an upper bound; this direction not certified");
  return {lower, upper};
}

double conjecture_ratio(double phi_half, double lambda2) {
  if (!(lambda2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda2 must be positive");
  return phi_half / std::sqrt(lambda2);
}

double check_conjecture_ratio(const MarkovChain& c, bool use_directed,
                              const BoundOptions& options) {
  const auto cert = certificate(c, use_directed);
  const auto cut = obtain_phi(c, 0.5, cert, options);
  return conjecture_ratio(cut.phi, cert.lambda2);
}

double gadget_C_sum(double p, std::span<const double> increasing) {
  double sum = 0.0;
  double prev = 0.0;
  double prev_pow = 0.0;
  for (double a : increasing) {
    if (!(a >= prev && a <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "gadget sequence must be nondecreasing in [0, 1]");
    const double a_pow = p == 1.0 ? a : std::pow(a, p);
    if (a > prev) {
      const double d = a_pow - prev_pow;
      sum += d * d / (a - prev);
    }
    prev = a;
    prev_pow = a_pow;
  }
  return sum;
}

double gadget_C_supremum(double p, std::size_t trials, std::uint64_t seed) {
  if (!(p > 0.5 && p <= 1.0))
    throw Error(ErrorCode::ExponentOutOfRange, "gadget needs p in (1/2, 1]");
  UniformSource rng(seed);
  double best = 0.0;
  std::vector<double> a;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t len = 1 + rng.next_index(50);
    a.resize(len);
    for (double& x : a) x = rng.next();
    std::sort(a.begin(), a.end());
    if (rng.next() < 0.5) a.back() = 1.0;
    best = std::max(best, gadget_C_sum(p, a));
  }
  // Geometric sequences a_j = r^{m-j}, the extremal shape for this sum.
  for (double r : {0.3, 0.5, 0.7, 0.9, 0.95, 0.99, 0.999}) {
    for (std::size_t m : {1u, 2u, 5u, 10u, 50u, 200u, 1000u, 5000u}) {
      a.resize(m);
      for (std::size_t j = 1; j <= m; ++j) a[j - 1] = std::pow(r, static_cast<double>(m - j));
      best = std::max(best, gadget_C_sum(p, a));
    }
  }
  return best;
}

double gadget_log_chain(double b0, std::uint64_t m) {
  if (!(b0 > 0.0 && b0 <= 1.0)) throw Error(ErrorCode::InvalidArgument, "b0 must lie in (0, 1]");
  const double x = static_cast<double>(m) + 1.0;
  return x * std::tanh(-std::log(b0) / (2.0 * x));
}

}  // namespace phip
