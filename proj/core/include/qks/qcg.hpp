#pragma once

// q-Clebsch-Gordan coefficients and the sequential coupling transform from
// the product basis to the block (coupled) basis.

#include <vector>

#include "qks/coalgebra.hpp"
#include "qks/qarith.hpp"
#include "qks/types.hpp"

namespace qks {

// <j1 m1; j2 m2 | j m>_q. Returns 0 when m != m1 + m2. Reduces to the
// Condon-Shortley coefficient at eta = 0. Throws ValidationError for
// inconsistent quantum numbers.
double qcg_coefficient(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m,
                       Deformation d);

struct BlockLabel {
  HalfInt J;
  int copy = 1;  // 1-based among blocks of equal J
  HalfInt m;
  // Spins after coupling sites 1..k, k = 1..N; path.back() == J.
  std::vector<HalfInt> path;
};

struct CouplingTransform {
  // Column c is the coupled basis vector labels[c] in the product basis.
  OperatorMatrix matrix;
  std::vector<BlockLabel> labels;
};

// Couples sites left to right, ((j1 j2) j3) ... jN. Columns are ordered by
// J descending, then copy, then m descending. Copies of one J are ordered by
// their intermediate spins, lexicographically descending.
// Throws ValidationError if the product dimension exceeds `cap`.
CouplingTransform couple_all(const SiteLayout& layout, Deformation d,
                             std::size_t cap = 8192);

// The J = N/2 coupled vector of N spin-1/2 sites with total m.
StateVector q_dicke_state(int N, HalfInt m, Deformation d);

}  // namespace qks
