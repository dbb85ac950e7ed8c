#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>

namespace astk {

/// Exact rational scalar. Knots, constraint-matrix entries and refinement
/// coefficients are kept in this type; conversion to double happens only at
/// evaluation boundaries.
using Rational = mpq_class;

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline double to_double(const Rational& q) { return q.get_d(); }

/// Parses "p/q", "p" or a plain decimal integer with optional sign.
/// Throws Error(MalformedMeshFile-adjacent) via std::invalid_argument on junk.
Rational rational_from_string(const std::string& text);

/// Canonical text form: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Formats a double with 17 significant digits (round-trip safe).
std::string format_double(double x);

}  // namespace astk

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
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
