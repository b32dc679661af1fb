#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "phip/chain.hpp"
#include "phip/matrix.hpp"

namespace phip {

/// Eigenvalues in ascending order; column k of `vectors` belongs to values[k].
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};

/// Cyclic Jacobi on the symmetrized input (M + M^T) / 2. Converges once the
/// off-diagonal Frobenius mass is below 1e-14 ||M||_F; throws NoConvergence
/// after 100 sweeps.
EigenDecomposition symmetric_eigensolve(const Matrix& m);

enum class SpectralKind { ReversibleNormalized, ChungDirected };

std::string_view to_string(SpectralKind kind);

struct SpectralCertificate {
  double lambda2 = 0.0;
  std::vector<double> f2;  // Pi^{-1/2} v2
  std::vector<double> v2;  // unit eigenvector of the symmetric operator
  SpectralKind kind = SpectralKind::ReversibleNormalized;
  double residual = 0.0;   // ||M v2 - lambda2 v2||_2
};

/// Pi^{1/2} P Pi^{-1/2}; symmetric exactly when the chain is reversible.
Matrix similarity_transform(const MarkovChain& c);

/// I - Pi^{1/2} P Pi^{-1/2}, symmetrized. Requires a reversible chain.
Matrix normalized_laplacian(const MarkovChain& c);

/// Chung's directed Laplacian I - (S + S^T) / 2 with S = Pi^{1/2} P Pi^{-1/2}.
Matrix chung_laplacian(const MarkovChain& c);

SpectralCertificate lambda2_reversible(const MarkovChain& c);
SpectralCertificate lambda2_directed(const MarkovChain& c);

/// The nonnegative part of +-f2, with the sign chosen so that the support has
/// pi-mass at most 1/2, rescaled to max 1. Entries with |f2| <= 1e-12 max|f2|
/// count as zero.
std::vector<double> truncated_eigenvector(const SpectralCertificate& cert, const MarkovChain& c);

/// sum_{f(u) >= f(v)} pi(u) P(u,v) (f(u) - f(v))^2 / sum_v pi(v) f(v)^2.
double truncated_rayleigh(const MarkovChain& c, std::span<const double> f);

/// (1/2) sum_{u,v} pi(u) P(u,v) (f(u) - f(v))^2 / sum_v pi(v) f(v)^2.
/// Equal to truncated_rayleigh on reversible chains; on non-reversible chains
/// this is the form bounded by lambda2 of the directed Laplacian.
double truncated_rayleigh_symmetric(const MarkovChain& c, std::span<const double> f);

}  // namespace phip
