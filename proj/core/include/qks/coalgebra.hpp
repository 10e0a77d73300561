#pragma once

// N-site product space and the (deformed) N-fold coproducts of the
// single-site generators. Site 1 is the leftmost Kronecker factor.

#include <cstddef>
#include <span>
#include <vector>

#include "qks/qarith.hpp"
#include "qks/repbuilder.hpp"
#include "qks/types.hpp"

namespace qks {

class SiteLayout {
 public:
  explicit SiteLayout(std::vector<HalfInt> spins);
  static SiteLayout uniform(int n_sites, HalfInt j);

  int size() const { return static_cast<int>(spins_.size()); }
  const std::vector<HalfInt>& spins() const { return spins_; }
  const std::vector<int>& dims() const { return dims_; }
  // Product of (2 j_i + 1); saturates at SIZE_MAX.
  std::size_t total_dim() const { return total_dim_; }

 private:
  std::vector<HalfInt> spins_;
  std::vector<int> dims_;
  std::size_t total_dim_ = 1;
};

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix kron_all(std::span<const OperatorMatrix> factors);

// I (x) ... (x) op (x) ... (x) I with op on `site` (1-based).
OperatorMatrix embed(const OperatorMatrix& op, int site, const SiteLayout& layout);

struct LadderPair {
  OperatorMatrix plus;
  OperatorMatrix minus;
};

// sum_i L_z^(i); the same for deformed and undeformed algebras.
OperatorMatrix coproduct_z(const SiteLayout& layout);

// sum_i J_pm^(i)
LadderPair coproduct_pm_undeformed(const SiteLayout& layout);

// sum_i [prod_{k<i} q^{-L_z^(k)/2}] L_pm^(i) [prod_{k>i} q^{L_z^(k)/2}]
LadderPair coproduct_pm_deformed(const SiteLayout& layout, Deformation d);

// The same coproduct built by iterating the two-fold map:
// left_nested = ((1 2) 3) ..., right_nested = 1 (2 (3 ...)).
enum class Iteration { left_nested, right_nested };
LadderPair coproduct_pm_iterated(const SiteLayout& layout, Deformation d, Iteration order);

// Entrywise [x]_q on the diagonal. Throws ValidationError for a
// non-diagonal or complex-diagonal argument.
OperatorMatrix q_bracket_of_diagonal(const OperatorMatrix& op, Deformation d);

// Single-site representations for every site of the layout.
std::vector<SpinRep> site_reps(const SiteLayout& layout, Deformation d);

// diag(exp(c * m)) for the z-operator of a rep.
OperatorMatrix exp_of_z(const SpinRep& rep, double c);

}  // namespace qks
