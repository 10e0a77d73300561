#pragma once

// Single-site spin-j matrices for U(su(2)) and U_q(su(2)). Basis is ordered
// by descending m, so z() = diag(j, j-1, ..., -j).

#include "qks/qarith.hpp"
#include "qks/types.hpp"

namespace qks {

struct SpinRep {
  HalfInt j;
  int dim = 1;
  OperatorMatrix plus;
  OperatorMatrix minus;
  OperatorMatrix z;
  Deformation deformation;
};

// J_+ |j,m> = sqrt((j-m)(j+m+1)) |j,m+1>. Throws ValidationError for j < 0.
SpinRep su2_generators(HalfInt j);

// L_+ |j,m> = sqrt([j-m]_q [j+m+1]_q) |j,m+1>.
SpinRep suq2_generators(HalfInt j, Deformation d);

// L_+ = J_+ F(J_z), L_- = F(J_z) J_- with
// F(m) = sqrt([j-m]_q [j+m+1]_q / ((j-m)(j+m+1))) and F := 0 where j-m = 0.
SpinRep deforming_functional(HalfInt j, Deformation d);

enum class CasimirOrdering {
  lowering_first,  // L_- L_+ + [L_z]_q [L_z + 1]_q
  raising_first,   // L_+ L_- + [L_z]_q [L_z - 1]_q
};

OperatorMatrix q_casimir_matrix(const SpinRep& rep,
                                CasimirOrdering ordering = CasimirOrdering::lowering_first);

// [j]_q [j+1]_q, the q-Casimir eigenvalue on the spin-j irrep.
double q_casimir_value(HalfInt j, Deformation d);

}  // namespace qks
