#pragma once

// Thermodynamics of the (q-)KS model from the analytic spectrum.
// With x = beta gamma h, a = 1/2 and A = J + 1/2, the Zeeman sum of a block is
//   S_J(x) = sum_{m=-J}^{J} e^{x m} = sinh(A x) / sinh(a x),
// with mean <m>_J = A coth(A x) - a coth(a x) and variance
//   var_J(m) = a^2 / sinh^2(a x) - A^2 / sinh^2(A x)   (J (J + 1) / 3 at x = 0).

#include <cstdint>
#include <vector>

#include "qks/hamiltonian.hpp"
#include "qks/spectrum.hpp"
#include "qks/types.hpp"

namespace qks {

struct LevelWeight {
  std::int64_t p = 0;
  HalfInt J;
  double E = 0.0;       // raw block energy, no Zeeman term
  double E_corr = 0.0;  // E minus the ground energy
  double log_z = 0.0;   // ln of the block's contribution to Z
  double weight = 0.0;  // z_p / Z
};

struct PartitionResult {
  double T = 0.0;
  double log_Z = 0.0;  // with corrected energies
  double ground_energy = 0.0;
  std::vector<LevelWeight> weights;  // ordered by p
};

struct ThermoPoint {
  double T = 0.0;
  double log_Z = 0.0;
  double F = 0.0;  // -(k_B T / N) log_Z
  double C_V = 0.0;
  double chi = 0.0;
  double M = 0.0;
};

// Block mean and variance of m under the weight e^{x m}.
struct ZeemanMoments {
  double log_sum = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};
ZeemanMoments zeeman_moments(HalfInt J, double x);

// Precomputed block table for repeated evaluation at many temperatures.
class ThermoModel {
 public:
  explicit ThermoModel(ModelConfig cfg);

  const ModelConfig& config() const { return cfg_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  double ground_energy() const { return e0_; }

  PartitionResult partition_function(double T) const;
  ThermoPoint observables(double T) const;

  // -(k_B T / N) ln Z with raw (uncorrected) energies.
  double free_energy_raw(double T) const;

  // -d ln(chi)/dT of the zero-field susceptibility, by exact differentiation.
  double log_chi_slope(double T) const;

  // ln z_p for every block (ordered by p), unnormalized, corrected energies.
  std::vector<double> log_level_weights(double T) const;

 private:
  double beta(double T) const;

  ModelConfig cfg_;
  std::vector<Block> blocks_;
  double e0_ = 0.0;
};

PartitionResult partition_function(const ModelConfig& cfg, double T);
ThermoPoint observables(const ModelConfig& cfg, double T);

// Observables on a temperature grid; points are independent and evaluated
// on up to `threads` threads (0 = all cores).
std::vector<ThermoPoint> observables_sweep(const ThermoModel& model,
                                           const std::vector<double>& temperatures,
                                           unsigned threads = 0);

// ln(sum_k exp(x_k)); -inf for an empty input.
double log_sum_exp(const std::vector<double>& x);

}  // namespace qks
