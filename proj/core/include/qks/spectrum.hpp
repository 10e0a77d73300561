#pragma once

// Closed-form spectrum of the (q-)KS model: block spins J with their
// multiplicities, raw and corrected energies, Zeeman splitting, and the
// dense-diagonalization oracle used to check it for small N.

#include <cstdint>
#include <optional>
#include <vector>

#include "qks/hamiltonian.hpp"
#include "qks/types.hpp"

namespace qks {

// Number of spin-J blocks in the N-fold tensor power of spin j, exact.
// Two independent routes (convolution and alternating binomial sum, plus the
// binomial closed form for j = 1/2) must agree; ConsistencyError otherwise.
BigInt multiplicity(HalfInt J, std::int64_t N, HalfInt j);

// Individual routes. All throw ValidationError for an invalid (J, N, j).
BigInt multiplicity_dp(HalfInt J, std::int64_t N, HalfInt j);
BigInt multiplicity_alternating(HalfInt J, std::int64_t N, HalfInt j);
BigInt multiplicity_spin_half(HalfInt J, std::int64_t N);

// ln d for spin 1/2 without big integers: ln C(N,p) + ln((N-2p+1)/(N-p+1)).
double log_multiplicity_spin_half(HalfInt J, std::int64_t N);

// Number of states with total magnetization M, Omega(M), for every M from
// the maximum down to the minimum, for an arbitrary list of site spins.
std::vector<BigInt> magnetization_counts(const std::vector<HalfInt>& spins);

// ln of a positive big integer.
double log_big(const BigInt& x);

// One irreducible block of the decomposition, h-independent.
struct Block {
  HalfInt J;
  std::int64_t p = 0;  // (sum of site spins) - J; N/2 - J for spin 1/2
  std::optional<BigInt> multiplicity;  // present in exact mode
  double log_multiplicity = 0.0;
  double casimir = 0.0;  // [J]_q [J+1]_q
  double E = 0.0;        // -(I/2)([J]_q[J+1]_q - K_q), no Zeeman term
};

enum class MultiplicityMode { automatic, exact, log };

// Blocks ordered by descending J; blocks with zero multiplicity are dropped.
// automatic: exact for j = 1/2 up to N = 10^4 and for other spins while the
// big-integer convolution stays small, log-domain otherwise.
std::vector<Block> analytic_blocks(const ModelConfig& cfg,
                                   MultiplicityMode mode = MultiplicityMode::automatic);

struct SpectrumLine {
  HalfInt J;
  std::int64_t p = 0;
  std::optional<BigInt> multiplicity;
  double log_multiplicity = 0.0;
  std::optional<HalfInt> m;  // present iff h != 0
  double E = 0.0;
  double E_corr = 0.0;

  // Number of states on the line: d (2J+1) when m is absent, d otherwise.
  double log_weight() const;
  std::optional<BigInt> weight() const;
};

inline constexpr std::size_t kMaxZeemanLines = 10'000'000;

// For h == 0 one line per block; for h != 0 each block splits into 2J+1
// lines with shift -gamma h m, ordered by descending m. E_corr is measured
// from the minimum over all lines.
std::vector<SpectrumLine> analytic_levels(const ModelConfig& cfg,
                                          MultiplicityMode mode = MultiplicityMode::automatic);

// Minimum raw energy over all blocks and Zeeman lines.
double ground_energy(const ModelConfig& cfg);
double ground_energy(const std::vector<Block>& blocks, double zeeman);

struct DensityOfStates {
  double width = 0.0;
  std::vector<double> lower;  // bin k covers (lower, upper], bin 0 includes 0
  std::vector<double> upper;
  std::vector<double> center;
  std::vector<double> log10_weight;          // -inf for an empty bin
  std::vector<std::optional<BigInt>> weight;  // present when every line is exact
};

// Histogram of E_corr over [0, max E_corr] weighted by the number of states.
DensityOfStates density_of_states(const std::vector<SpectrumLine>& lines, int bins);

// Every eigenvalue of the analytic spectrum with its multiplicity expanded,
// ascending. Requires exact multiplicities and a total count <= cap.
std::vector<double> expanded_eigenvalues(const std::vector<SpectrumLine>& lines,
                                         std::size_t cap = kDefaultSizeCap);

// Dense Hermitian eigendecomposition, ascending. Throws ValidationError if H
// is not Hermitian to 1e-10 or is larger than `cap`, ConsistencyError if a
// residual exceeds 1e-9 ||H||.
std::vector<double> diagonalize_oracle(const OperatorMatrix& H, std::size_t cap = kDefaultSizeCap);

// max_k |a_k - b_k| / max(1, max|a|); a and b must have equal size.
double max_relative_deviation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qks
