#include "qks/qarith.hpp"

#include <cmath>
#include <string>

namespace qks {

Deformation::Deformation(double eta) : eta_(eta) {
  if (!std::isfinite(eta)) throw ValidationError("deformation eta must be finite");
}

Deformation Deformation::from_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw ValidationError("deformation q must be positive and finite");
  }
  return Deformation(std::log(q));
}

double Deformation::q() const { return std::exp(eta_); }

double q_number(double n, Deformation d) {
  if (d.is_undeformed()) return n;
  const double half = 0.5 * d.eta();
  return std::sinh(n * half) / std::sinh(half);
}

double log_sinh(double x) {
  // sinh(x) = e^x (1 - e^{-2x}) / 2
  if (x > 30.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

double log_q_number(double n, Deformation d) {
  if (!(n > 0.0)) throw ValidationError("log_q_number requires n > 0");
  if (d.is_undeformed()) return std::log(n);
  // [n]_q is even in eta.
  const double half = 0.5 * std::abs(d.eta());
  return log_sinh(n * half) - log_sinh(half);
}

double q_factorial_log(std::int64_t n, Deformation d) {
  if (n < 0) throw ValidationError("q_factorial_log requires n >= 0");
  double acc = 0.0;
  for (std::int64_t k = 2; k <= n; ++k) acc += log_q_number(static_cast<double>(k), d);
  return acc;
}

BigInt binomial_exact(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) {
    throw ValidationError("binomial requires 0 <= k <= n (n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
  }
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

double log_binomial(double n, double k) {
  if (n < 0 || k < 0 || k > n) throw ValidationError("log_binomial requires 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace qks
