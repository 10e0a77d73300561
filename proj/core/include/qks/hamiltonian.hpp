#pragma once

// Kittel-Shore (KS) and q-deformed KS Hamiltonians as dense matrices.
//
// Two independent assembly routes exist for the deformed model:
//   * coalgebra: -I/2 (Delta(L_-) Delta(L_+) + [Delta L_z]_q [Delta L_z + 1]_q - K_q)
//                - gamma h Delta(L_z)
//   * explicit:  the fully expanded site/pair sum with exponential dressings.
// They must agree entrywise; build_qks_verified() enforces it.

#include <cstddef>
#include <vector>

#include "qks/coalgebra.hpp"
#include "qks/qarith.hpp"
#include "qks/types.hpp"

namespace qks {

inline constexpr std::size_t kDefaultSizeCap = 8192;

enum class Scaling {
  raw,
  thermodynamic,  // I -> I/N and eta -> eta/N
};

struct ModelConfig {
  std::vector<HalfInt> spins{kHalf};
  double I = 1.0;  // > 0 ferromagnetic, < 0 antiferromagnetic
  double h = 0.0;
  double gamma = 1.0;
  double eta = 0.0;
  double k_B = 1.0;
  Scaling scaling = Scaling::raw;
  std::size_t size_cap = kDefaultSizeCap;

  static ModelConfig uniform(int n_sites, HalfInt j);

  int n_sites() const { return static_cast<int>(spins.size()); }
  bool is_uniform() const;
  SiteLayout layout() const { return SiteLayout(spins); }

  // Coupling and deformation after scaling.
  double effective_coupling() const;
  Deformation effective_deformation() const;
  // gamma * h, the only way the field enters.
  double zeeman() const { return gamma * h; }

  // Throws ValidationError on an unusable configuration.
  void validate() const;
};

// Throws ValidationError if the layout's product dimension exceeds the cap.
void enforce_size_cap(const SiteLayout& layout, std::size_t cap);

// K_q = sum_i [j_i]_q [j_i + 1]_q
double casimir_constant(const std::vector<HalfInt>& spins, Deformation d);

// Undeformed model via -I/2 (Delta_0(C) - sum_i C^(i)) - gamma h Delta_0(J_z).
// Requires eta == 0.
OperatorMatrix build_ks_coalgebra(const ModelConfig& cfg);
// Undeformed model via -I sum_{i<j} J_i . J_j - gamma h sum_i J_z^(i).
OperatorMatrix build_ks_pairwise(const ModelConfig& cfg);
// Both undeformed routes; throws ConsistencyError if they differ by > 1e-12.
OperatorMatrix build_ks(const ModelConfig& cfg);

OperatorMatrix build_qks_coalgebra(const ModelConfig& cfg);
OperatorMatrix build_qks_explicit(const ModelConfig& cfg);
// Both deformed routes; throws ConsistencyError if they differ by more than
// 1e-10 relative to the largest entry.
OperatorMatrix build_qks_verified(const ModelConfig& cfg);

// Collective Delta(L_pm) and Delta(L_z) for the configuration's effective
// deformation; the symmetry operators of the model.
LadderPair collective_ladders(const ModelConfig& cfg);

double max_abs_entry(const OperatorMatrix& m);
double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace qks
