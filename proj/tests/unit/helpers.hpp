#pragma once

#include <random>

#include "qks/hamiltonian.hpp"

namespace qks::test {

inline double max_abs(const OperatorMatrix& m) { return max_abs_entry(m); }

inline double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  return max_abs_entry(a * b - b * a);
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240917);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace qks::test
