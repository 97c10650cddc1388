#include "permwalk/linsolve.hpp"

#include <stdexcept>
#include <utility>

namespace permwalk {

Rational rational_from_strings(const std::string& num, const std::string& den) {
  if (num.empty() || den.empty()) throw std::invalid_argument("empty rational component");
  Rational q{mpz_class(num), mpz_class(den)};
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

RationalVector solve_exact(RationalMatrix a, RationalVector b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::logic_error("solve_exact: shape mismatch");

  for (Eigen::Index col = 0; col < n; ++col) {
    // Largest-magnitude pivot, compared exactly.
    Eigen::Index pivot = -1;
    Rational best;
    for (Eigen::Index r = col; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rational mag = abs(a(r, col));
      if (pivot < 0 || mag > best) {
        pivot = r;
        best = std::move(mag);
      }
    }
    if (pivot < 0) throw std::logic_error("solve_exact: singular system");
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      std::swap(b(pivot), b(col));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational factor = a(r, col) / a(col, col);
      a(r, col) = 0;
      for (Eigen::Index k = col + 1; k < n; ++k) {
        if (a(col, k) != 0) a(r, k) -= factor * a(col, k);
      }
      b(r) -= factor * b(col);
    }
  }

  RationalVector x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    Rational acc = b(r);
    for (Eigen::Index k = r + 1; k < n; ++k) {
      if (a(r, k) != 0) acc -= a(r, k) * x(k);
    }
    x(r) = acc / a(r, r);
  }
  return x;
}

Eigen::VectorXd solve_float(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return a.partialPivLu().solve(b);
}

}  // namespace permwalk
