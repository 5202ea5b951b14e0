#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace deflag {

/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// In cyclic form lower[0] couples to x[n-1] and upper[n-1] to x[0];
/// otherwise those two entries are ignored.
struct Tridiagonal {
  std::vector<double> lower, diag, upper;

  explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
  std::size_t size() const noexcept { return diag.size(); }

  /// A x for the matrix in the requested form.
  std::vector<double> apply(std::span<const double> x, bool cyclic) const;
};

/// Thomas elimination; throws SolveError on a vanishing pivot.
std::vector<double> solve_tridiagonal(const Tridiagonal& m, std::span<const double> rhs);

/// Periodic variant via the Sherman-Morrison correction (n >= 3).
std::vector<double> solve_cyclic_tridiagonal(const Tridiagonal& m, std::span<const double> rhs);

inline std::vector<double> solve(const Tridiagonal& m, std::span<const double> rhs, bool cyclic) {
  return cyclic ? solve_cyclic_tridiagonal(m, rhs) : solve_tridiagonal(m, rhs);
}

}  // namespace deflag
