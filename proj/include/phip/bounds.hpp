#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phip/chain.hpp"
#include "phip/isoperimetry.hpp"
#include "phip/spectral.hpp"

namespace phip {

inline constexpr double kBoundTol = 1e-9;

/// One inequality instance lhs <= rhs (+ tol) evaluated on a concrete chain.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
  double tol = kBoundTol;
  std::optional<CutResult> cut;        // set realizing the phi value used
  std::optional<double> lambda2;       // eigenvalue used
  std::optional<SpectralKind> lambda2_kind;
  std::vector<std::string> notes;
};

BoundReport make_bound_report(std::string name, double lhs, double rhs, double tol = kBoundTol);

/// Where a bound check takes its phi value from. Auto enumerates when the
/// chain is within the exact cap and sweeps otherwise; a sweep value is an
/// upper bound on phi_p, so an upper-bound check that holds for it holds for
/// phi_p as well.
enum class PhiSource { Auto, Exact, Sweep };

struct BoundOptions {
  PhiSource source = PhiSource::Auto;
  ExactOptions exact{};
};

/// phi_p^2 <= 4 lambda2 / (2p - 1) for p in (1/2, 1]; lambda2 of I - P, or of
/// the directed Laplacian when use_directed is set.
BoundReport check_main_theorem(const MarkovChain& c, double p, bool use_directed,
                               const BoundOptions& options = {});

/// lambda2 >= phi^2 / (8 log(2 / phi)) with phi = phi_{1/2}. No laziness
/// hypothesis is imposed; the report notes whether the chain is lazy.
BoundReport check_morris_peres(const MarkovChain& c, bool use_directed,
                               const BoundOptions& options = {});

/// lambda2 / 2 <= phi_1 <= sqrt(2 lambda2) on a reversible chain.
std::pair<BoundReport, BoundReport> check_cheeger(const MarkovChain& c,
                                                  const BoundOptions& options = {});

/// phi_1^2 / 2 <= lambda2(directed Laplacian) <= 2 phi_1.
std::pair<BoundReport, BoundReport> check_chung(const MarkovChain& c,
                                                const BoundOptions& options = {});

/// rho = phi_{1/2} / sqrt(lambda2).
double conjecture_ratio(double phi_half, double lambda2);
double check_conjecture_ratio(const MarkovChain& c, bool use_directed = false,
                              const BoundOptions& options = {});

/// sum_j (a_j^p - a_{j-1}^p)^2 / (a_j - a_{j-1}) with a_0 = 0; equal
/// consecutive terms contribute nothing.
double gadget_C_sum(double p, std::span<const double> increasing);

/// Largest gadget_C_sum seen over `trials` random monotone sequences of length
/// 1..50 plus a geometric family; bounded by 1 / (2p - 1).
double gadget_C_supremum(double p, std::size_t trials, std::uint64_t seed);

/// (m + 1) (1 - b0^{1/(m+1)}) / (1 + b0^{1/(m+1)}), evaluated stably as
/// x tanh(log(1/b0) / (2x)) with x = m + 1.
double gadget_log_chain(double b0, std::uint64_t m);

/// Seeded uniform draws on [0, 1). Uses the raw mt19937_64 stream (fully
/// specified by the standard) rather than std::uniform_real_distribution, so
/// sequences are identical across standard libraries.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed);
  double next();
  std::uint64_t next_index(std::uint64_t bound);  // uniform on [0, bound)

 private:
  std::mt19937_64 engine_;
};

}  // namespace phip
