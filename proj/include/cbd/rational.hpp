#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace cbd {

/// Exact rational scalar used for every probability and expectation.
/// Always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using VectorXr = VectorX<Rational>;
using MatrixXr = MatrixX<Rational>;

/// Raised when an instance exceeds a configured size or pivot budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses an exact rational from "a/b", an integer, or a terminating
/// decimal with optional exponent ("0.0485", "25e-5"). Throws
/// std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& value);

inline Rational abs_value(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// 10^exponent as an exact rational (exponent may be negative).
Rational power_of_ten(int exponent);

}  // namespace cbd
