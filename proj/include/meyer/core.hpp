#pragma once

// Shared numeric vocabulary: Eigen aliases templated on scalar, the exact
// rational scalar, and small scalar-generic helpers used by every module.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace meyer {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Float50 = boost::multiprecision::number<boost::multiprecision::gmp_float<50>,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXr = Vector<Rational>;
using MatrixXr = Matrix<Rational>;
using VectorXl = Vector<std::int64_t>;

/// Raised for malformed or out-of-contract input (CLI maps it to exit 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Slack allowed on inequalities evaluated in a given scalar type. Exact
/// scalars get zero slack; doubles get 1e-9 on every half-space test.
template <typename Scalar>
inline Scalar membership_tolerance() {
  return Scalar(0);
}
template <>
inline double membership_tolerance<double>() {
  return 1e-9;
}

template <typename Scalar>
inline double to_double(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

template <typename Scalar>
inline Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

/// Parses a decimal literal ("-0.129", "2.5e-3", "7") into an exact rational.
Rational parse_rational(std::string_view text);

/// Parses a rational and converts to double; keeps the double path aligned
/// with the exact path on the same literal.
double parse_real(std::string_view text);

/// Splits on a single-character separator, trimming whitespace; empty input
/// yields an empty list.
std::vector<std::string> split(std::string_view text, char sep);

/// Determinant by Gaussian elimination. Exact for exact scalars; partial
/// pivoting by magnitude for floating scalars.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw InputError("determinant of a non-square matrix");
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (abs_value(a(r, col)) > abs_value(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == Scalar(0)) return Scalar(0);
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Scalar factor = a(r, col) / a(col, col);
      if (factor == Scalar(0)) continue;
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan elimination; throws on a singular matrix.
template <typename Scalar>
Matrix<Scalar> inverse(Matrix<Scalar> a) {
  const Eigen::Index n = a.rows();
  Matrix<Scalar> inv = Matrix<Scalar>::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (abs_value(a(r, col)) > abs_value(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == Scalar(0)) throw InputError("singular matrix");
    a.row(pivot).swap(a.row(col));
    inv.row(pivot).swap(inv.row(col));
    const Scalar p = a(col, col);
    for (Eigen::Index c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == Scalar(0)) continue;
      const Scalar factor = a(r, col);
      for (Eigen::Index c = 0; c < n; ++c) {
        a(r, c) -= factor * a(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

template <typename Scalar>
Scalar squared_norm(const Vector<Scalar>& x) {
  Scalar s(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] * x[i];
  return s;
}

/// Matrix-vector product written out so it works for every scalar we use,
/// including multiprecision types whose Eigen promotion is fragile.
template <typename Scalar, typename Int>
Vector<Scalar> apply(const Matrix<Scalar>& m, const Vector<Int>& z) {
  Vector<Scalar> out(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Scalar s(0);
    for (Eigen::Index c = 0; c < m.cols(); ++c) s += m(r, c) * Scalar(z[c]);
    out[r] = s;
  }
  return out;
}

/// Strict lexicographic order on coordinates.
template <typename Derived1, typename Derived2>
bool lex_less(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

/// Parses "a,b;c,d" into a row-major matrix of exact rationals.
MatrixXr parse_matrix(std::string_view text);
/// Parses "a,b,c" into a vector of exact rationals.
VectorXr parse_vector(std::string_view text);

std::string format_double(double x);

}  // namespace meyer
