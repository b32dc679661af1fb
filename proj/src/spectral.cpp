#include "phip/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phip/error.hpp"

namespace phip {

std::string_view to_string(SpectralKind kind) {
  switch (kind) {
    case SpectralKind::ReversibleNormalized: return "reversible-normalized";
    case SpectralKind::ChungDirected: return "chung-directed";
  }
  return "unknown";
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-14;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Zero the (p, q) entry of the symmetric working matrix `a`, accumulating the
// rotation into `v`.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

SpectralCertificate certify(const Matrix& m, const MarkovChain& c, SpectralKind kind) {
  const std::size_t n = c.n();
  if (n < 2) throw Error(ErrorCode::TooSmall, "second eigenvalue needs at least two states");
  auto eig = symmetric_eigensolve(m);

  SpectralCertificate cert;
  cert.kind = kind;
  cert.lambda2 = eig.values[1];
  cert.v2 = eig.vectors.column(1);

  double norm = 0.0;
  for (double x : cert.v2) norm += x * x;
  norm = std::sqrt(norm);
  double largest = 0.0;
  for (double& x : cert.v2) {
    x /= norm;
    largest = std::max(largest, std::abs(x));
  }
  // Sign convention: first non-negligible coordinate positive.
  for (double x : cert.v2) {
    if (std::abs(x) > 1e-12 * largest) {
      if (x < 0.0)
        for (double& y : cert.v2) y = -y;
      break;
    }
  }

  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = -cert.lambda2 * cert.v2[i];
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * cert.v2[j];
    res += s * s;
  }
  cert.residual = std::sqrt(res);

  cert.f2.resize(n);
  for (std::size_t i = 0; i < n; ++i) cert.f2[i] = cert.v2[i] / std::sqrt(c.pi(i));
  return cert;
}

void require_nonnegative(std::span<const double> f, std::size_t n) {
  if (f.size() != n) throw Error(ErrorCode::InvalidArgument, "vector length does not match chain");
  bool nonzero = false;
  for (double x : f) {
    if (x < 0.0 || !std::isfinite(x))
      throw Error(ErrorCode::InvalidArgument, "truncated vector must be finite and nonnegative");
    if (x > 0.0) nonzero = true;
  }
  if (!nonzero) throw Error(ErrorCode::ZeroVector, "vector is identically zero");
}

double pi_norm_squared(const MarkovChain& c, std::span<const double> f) {
  double s = 0.0;
  for (std::size_t v = 0; v < c.n(); ++v) s += c.pi(v) * f[v] * f[v];
  return s;
}

}  // namespace

EigenDecomposition symmetric_eigensolve(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "eigensolver needs a square matrix");
  const std::size_t n = m.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  Matrix v = Matrix::identity(n);

  const double scale = a.frobenius_norm();
  bool converged = scale == 0.0 || n < 2;
  for (int sweep = 0; !converged && sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kOffDiagonalTol * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Late sweeps: drop entries that no longer move either diagonal.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > kOffDiagonalTol * scale)
    throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Matrix similarity_transform(const MarkovChain& c) {
  const std::size_t n = c.n();
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(c.pi(i));
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = root[i] * c.P(i, j) / root[j];
  return s;
}

Matrix chung_laplacian(const MarkovChain& c) {
  const auto s = similarity_transform(c);
  const std::size_t n = c.n();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      l(i, j) = (i == j ? 1.0 : 0.0) - 0.5 * (s(i, j) + s(j, i));
  return l;
}

Matrix normalized_laplacian(const MarkovChain& c) {
  if (!is_reversible(c)) throw Error(ErrorCode::NotReversible, "chain violates detailed balance");
  // Under detailed balance the two halves of the Chung form coincide.
  return chung_laplacian(c);
}

SpectralCertificate lambda2_reversible(const MarkovChain& c) {
  return certify(normalized_laplacian(c), c, SpectralKind::ReversibleNormalized);
}

SpectralCertificate lambda2_directed(const MarkovChain& c) {
  return certify(chung_laplacian(c), c, SpectralKind::ChungDirected);
}

std::vector<double> truncated_eigenvector(const SpectralCertificate& cert, const MarkovChain& c) {
  const std::size_t n = c.n();
  if (cert.f2.size() != n)
    throw Error(ErrorCode::InvalidArgument, "certificate does not match chain");
  double largest = 0.0;
  for (double x : cert.f2) largest = std::max(largest, std::abs(x));
  const double zero = 1e-12 * largest;

  double plus = 0.0, minus = 0.0;
  std::size_t first = n;
  for (std::size_t v = 0; v < n; ++v) {
    if (cert.f2[v] > zero) plus += c.pi(v);
    if (cert.f2[v] < -zero) minus += c.pi(v);
    if (first == n && std::abs(cert.f2[v]) > zero) first = v;
  }
  if (first == n) throw Error(ErrorCode::DegenerateEigenvector, "eigenvector is numerically zero");

  constexpr double half = 0.5 + 1e-12;
  double sign = 1.0;
  if (std::abs(plus - 0.5) <= 1e-12 && std::abs(minus - 0.5) <= 1e-12) {
    sign = cert.f2[first] > 0.0 ? 1.0 : -1.0;
  } else if (plus > half) {
    sign = -1.0;
  }

  std::vector<double> f(n, 0.0);
  double top = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const double x = sign * cert.f2[v];
    if (x > zero) {
      f[v] = x;
      top = std::max(top, x);
    }
  }
  if (top == 0.0)
    throw Error(ErrorCode::DegenerateEigenvector, "truncation leaves an empty support");
  for (double& x : f) x /= top;
  return f;
}

double truncated_rayleigh(const MarkovChain& c, std::span<const double> f) {
  require_nonnegative(f, c.n());
  double num = 0.0;
  for (std::size_t u = 0; u < c.n(); ++u)
    for (std::size_t v = 0; v < c.n(); ++v)
      if (f[u] >= f[v]) {
        const double d = f[u] - f[v];
        num += c.pi(u) * c.P(u, v) * d * d;
      }
  return num / pi_norm_squared(c, f);
}

double truncated_rayleigh_symmetric(const MarkovChain& c, std::span<const double> f) {
  require_nonnegative(f, c.n());
  double num = 0.0;
  for (std::size_t u = 0; u < c.n(); ++u)
    for (std::size_t v = 0; v < c.n(); ++v) {
      const double d = f[u] - f[v];
      num += c.pi(u) * c.P(u, v) * d * d;
    }
  return 0.5 * num / pi_norm_squared(c, f);
}

}  // namespace phip
