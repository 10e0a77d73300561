#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace qks {

using Complex = std::complex<double>;

// Dense complex operator on a (product) spin space. Basis order is the
// Kronecker order of the site factors, each factor ordered by descending m.
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

using BigInt = boost::multiprecision::cpp_int;

// Bad user input: invalid quantum numbers, size cap exceeded, wrong scaling.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested numerical regime does not hold (no susceptibility peak,
// unimodal weights for the equal-maxima method, ...).
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent computations of the same quantity disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Half-integer quantity (spin, magnetic quantum number) stored as twice its
// value so that arithmetic and comparisons are exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int integer) : twice_(2 * integer) {}

  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  // Accepts "3/2", "1.5", "2". Throws ValidationError otherwise.
  static HalfInt parse(std::string_view text);
  // Throws ValidationError unless 2*value is an integer.
  static HalfInt from_double(double value);

  constexpr std::int64_t twice() const { return twice_; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  // Only valid when is_integer().
  constexpr std::int64_t as_integer() const { return twice_ / 2; }

  std::string to_string() const;

  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  std::int64_t twice_ = 0;
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

// Integer difference a-b; throws ValidationError if it is not an integer.
std::int64_t integer_difference(HalfInt a, HalfInt b);

}  // namespace qks
