#include "qks/repbuilder.hpp"

#include <cmath>

namespace qks {
namespace {

void require_spin(HalfInt j) {
  if (j.twice() < 0) throw ValidationError("spin must be nonnegative, got " + j.to_string());
  if (j.twice() > 400) throw ValidationError("single-site spin too large: " + j.to_string());
}

// m value of basis index k (descending order).
double m_of(HalfInt j, int k) { return j.value() - k; }

template <class Element>
SpinRep make_rep(HalfInt j, Deformation d, Element element) {
  require_spin(j);
  SpinRep rep;
  rep.j = j;
  rep.dim = static_cast<int>(j.twice()) + 1;
  rep.deformation = d;
  rep.plus = OperatorMatrix::Zero(rep.dim, rep.dim);
  rep.z = OperatorMatrix::Zero(rep.dim, rep.dim);
  for (int k = 0; k < rep.dim; ++k) rep.z(k, k) = m_of(j, k);
  // plus maps column k (m) to row k-1 (m+1).
  for (int k = 1; k < rep.dim; ++k) rep.plus(k - 1, k) = element(m_of(j, k));
  rep.minus = rep.plus.adjoint();
  return rep;
}

}  // namespace

SpinRep su2_generators(HalfInt j) {
  const double jv = j.value();
  return make_rep(j, Deformation::undeformed(),
                  [jv](double m) { return std::sqrt((jv - m) * (jv + m + 1.0)); });
}

SpinRep suq2_generators(HalfInt j, Deformation d) {
  const double jv = j.value();
  return make_rep(j, d, [jv, d](double m) {
    return std::sqrt(q_number(jv - m, d) * q_number(jv + m + 1.0, d));
  });
}

SpinRep deforming_functional(HalfInt j, Deformation d) {
  SpinRep undeformed = su2_generators(j);
  const double jv = j.value();
  Eigen::VectorXcd factor(undeformed.dim);
  for (int k = 0; k < undeformed.dim; ++k) {
    const double m = m_of(j, k);
    const double a = jv - m;
    const double b = jv + m + 1.0;
    // 0/0 at m = j: J_+ annihilates that column anyway.
    factor(k) = (a == 0.0) ? 0.0 : std::sqrt(q_number(a, d) * q_number(b, d) / (a * b));
  }
  SpinRep rep = undeformed;
  rep.deformation = d;
  rep.plus = undeformed.plus * factor.asDiagonal();
  rep.minus = factor.asDiagonal() * undeformed.minus;
  return rep;
}

OperatorMatrix q_casimir_matrix(const SpinRep& rep, CasimirOrdering ordering) {
  const Deformation d = rep.deformation;
  const bool lowering = ordering == CasimirOrdering::lowering_first;
  OperatorMatrix c = lowering ? OperatorMatrix(rep.minus * rep.plus)
                              : OperatorMatrix(rep.plus * rep.minus);
  const double shift = lowering ? 1.0 : -1.0;
  for (int k = 0; k < rep.dim; ++k) {
    const double m = rep.z(k, k).real();
    c(k, k) += q_number(m, d) * q_number(m + shift, d);
  }
  return c;
}

double q_casimir_value(HalfInt j, Deformation d) {
  return q_number(j.value(), d) * q_number(j.value() + 1.0, d);
}

}  // namespace qks
