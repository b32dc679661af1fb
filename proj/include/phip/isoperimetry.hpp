#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "phip/chain.hpp"
#include "phip/spectral.hpp"

namespace phip {

/// Sorted, duplicate-free, 0-based state indices.
using Subset = std::vector<std::size_t>;

/// Slack on the pi(S) <= 1/2 admissibility test.
inline constexpr double kMassSlack = 1e-12;
inline constexpr std::size_t kDefaultMaxExactN = 24;

enum class CutMethod { Exact, Sweep, GivenSet };

std::string_view to_string(CutMethod method);

struct CutResult {
  Subset subset;
  double p = 1.0;
  double numerator = 0.0;  // sum_{v in S} pi(v) P(v, S^c)^p, or pi(dS) when p = 0
  double pi_mass = 0.0;
  double phi = 0.0;
  CutMethod method = CutMethod::GivenSet;
};

/// phi_p(S). For p = 0 the numerator is the pi-mass of the inner vertex
/// boundary {v in S : P(v, S^c) > 0}; for p > 0, 0^p is 0.
CutResult phi_p_of_set(const MarkovChain& c, const Subset& s, double p);

struct ExactOptions {
  std::size_t max_n = kDefaultMaxExactN;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Minimum of phi_p(S) over every nonempty S with pi(S) <= 1/2 (+1e-12),
/// by enumerating all 2^n bitmasks. Ties go to the smallest bitmask.
CutResult phi_p_exact(const MarkovChain& c, double p, const ExactOptions& options = {});

/// Level sets {i : f(i)^2 >= s} of the truncated eigenvector, one per
/// distinct positive value, ordered from the smallest set to the largest.
std::vector<Subset> sweep_level_sets(const MarkovChain& c, const SpectralCertificate& cert);

/// Best level set of the truncated eigenvector. For reversible certificates
/// and p in (1/2, 1] the result is checked against sweep_guarantee and a
/// violation raises PostconditionFailed.
CutResult sweep_cut(const MarkovChain& c, double p, const SpectralCertificate& cert);

/// 2 sqrt(lambda2 / (2p - 1)), the sweep guarantee for p in (1/2, 1].
double sweep_guarantee(double p, double lambda2);

struct PhiProfile {
  double phi0 = 0.0;
  double phi_half = 0.0;
  double phi1 = 0.0;
};

PhiProfile phi_profile(const MarkovChain& c, const Subset& s);

}  // namespace phip
