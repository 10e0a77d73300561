#pragma once

// q-numbers, q-factorials and binomials. Everything downstream goes through
// these; the undeformed point eta == 0 is always an exact branch.

#include <cstdint>

#include "qks/types.hpp"

namespace qks {

// Deformation parameter eta = ln q.
class Deformation {
 public:
  constexpr Deformation() = default;
  explicit Deformation(double eta);
  // Throws ValidationError unless q > 0 and finite.
  static Deformation from_q(double q);
  static constexpr Deformation undeformed() { return Deformation{}; }

  constexpr double eta() const { return eta_; }
  double q() const;
  constexpr bool is_undeformed() const { return eta_ == 0.0; }

  // eta -> eta / n, as used by the thermodynamic scaling.
  Deformation scaled_down(double n) const { return Deformation(eta_ / n); }

 private:
  double eta_ = 0.0;
};

// [n]_q = sinh(n eta / 2) / sinh(eta / 2); exactly n when eta == 0.
double q_number(double n, Deformation d);

// ln [n]_q for n > 0 without overflow. Throws ValidationError for n <= 0.
double log_q_number(double n, Deformation d);

// sum_{k=1..n} ln [k]_q, with [0]_q! = 1.
double q_factorial_log(std::int64_t n, Deformation d);

// Exact C(n, k). Throws ValidationError unless 0 <= k <= n.
BigInt binomial_exact(std::int64_t n, std::int64_t k);

// ln C(n, k) via lgamma. Throws ValidationError unless 0 <= k <= n.
double log_binomial(double n, double k);

// ln(sinh(x)) for x > 0, stable for large x.
double log_sinh(double x);

}  // namespace qks
