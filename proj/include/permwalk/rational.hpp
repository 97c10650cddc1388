#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>

namespace permwalk {

// Exact arbitrary-precision fraction. Arithmetic on canonical values stays
// canonical; only the (num, den) constructor needs an explicit
// canonicalize(), which make_rational takes care of.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string numerator_string(const Rational& q) {
  return q.get_num().get_str();
}

inline std::string denominator_string(const Rational& q) {
  return q.get_den().get_str();
}

// "3/4", or just "3" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses base-10 numerator/denominator strings (the JSON wire form).
Rational rational_from_strings(const std::string& num, const std::string& den);

}  // namespace permwalk

namespace Eigen {

// Dense-matrix support for the exact scalar: the standard custom-scalar
// NumTraits recipe. Costs are rough relative weights; they only steer
// Eigen's internal heuristics.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100,
  };
};

}  // namespace Eigen
