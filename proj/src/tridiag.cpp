#include "deflag/tridiag.hpp"

#include <cmath>
#include <stdexcept>

#include "deflag/errors.hpp"

namespace deflag {

std::vector<double> Tridiagonal::apply(std::span<const double> x, bool cyclic) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) {
      v += lower[i] * x[i - 1];
    } else if (cyclic) {
      v += lower[0] * x[n - 1];
    }
    if (i + 1 < n) {
      v += upper[i] * x[i + 1];
    } else if (cyclic) {
      v += upper[n - 1] * x[0];
    }
    y[i] = v;
  }
  return y;
}

namespace {

std::vector<double> thomas(std::span<const double> a, std::span<const double> b,
                           std::span<const double> c, std::span<const double> d) {
  const std::size_t n = b.size();
  std::vector<double> cp(n), dp(n), x(n);
  double pivot = b[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) throw SolveError("tridiagonal solve: zero pivot");
  cp[0] = c[0] / pivot;
  dp[0] = d[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = b[i] - a[i] * cp[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) throw SolveError("tridiagonal solve: zero pivot");
    cp[i] = (i + 1 < n) ? c[i] / pivot : 0.0;
    dp[i] = (d[i] - a[i] * dp[i - 1]) / pivot;
  }
  x[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
  return x;
}

}  // namespace

std::vector<double> solve_tridiagonal(const Tridiagonal& m, std::span<const double> rhs) {
  if (rhs.size() != m.size() || m.size() == 0) {
    throw std::invalid_argument("tridiagonal solve: size mismatch");
  }
  return thomas(m.lower, m.diag, m.upper, rhs);
}

std::vector<double> solve_cyclic_tridiagonal(const Tridiagonal& m, std::span<const double> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n || n < 3) throw std::invalid_argument("cyclic tridiagonal solve: bad size");
  const double alpha = m.upper[n - 1];
  const double beta = m.lower[0];
  if (alpha == 0.0 && beta == 0.0) return thomas(m.lower, m.diag, m.upper, rhs);

  // A = B + w v^T with w = (gamma, 0, .., alpha), v = (1, 0, .., beta/gamma).
  const double gamma = m.diag[0] == 0.0 ? 1.0 : -m.diag[0];
  std::vector<double> b = m.diag;
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;
  std::vector<double> x = thomas(m.lower, b, m.upper, rhs);
  std::vector<double> w(n, 0.0);
  w[0] = gamma;
  w[n - 1] = alpha;
  std::vector<double> q = thomas(m.lower, b, m.upper, w);
  const double denom = 1.0 + q[0] + beta / gamma * q[n - 1];
  if (denom == 0.0 || !std::isfinite(denom)) throw SolveError("cyclic tridiagonal solve: singular");
  const double factor = (x[0] + beta / gamma * x[n - 1]) / denom;
  for (std::size_t i = 0; i < n; ++i) x[i] -= factor * q[i];
  return x;
}

}  // namespace deflag
