#pragma once

// Curie-temperature estimators for the spin-1/2 (q-)KS model with
// thermodynamic scaling, and the closed-form references.

#include <cstdint>
#include <string>
#include <vector>

#include "qks/hamiltonian.hpp"
#include "qks/thermo.hpp"

namespace qks {

enum class CurieMethod {
  susceptibility_peak,  // steepest relative drop of chi(T): max of -d ln chi / dT
  equal_maxima,         // the two peaks of z_p / Z take the same value
  weight_minimax,       // T minimizing max_p z_p / Z
  analytic_formula,
  limit_formula,
  fit_reference,
};

enum class Regime { unimodal, bimodal };

std::string to_string(CurieMethod m);
std::string to_string(Regime r);
// Throws ValidationError for an unknown name.
CurieMethod parse_curie_method(const std::string& name);

struct CurieDiagnostics {
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  double residual = 0.0;
  // Full width at half maximum of the estimator's peak divided by T_C
  // (susceptibility method only, 0 otherwise).
  double relative_width = 0.0;
  // Positions p of the strict local maxima of z_p at T_C.
  std::vector<std::int64_t> peaks;
};

struct CurieEstimate {
  double eta = 0.0;
  std::int64_t N = 0;
  CurieMethod method = CurieMethod::susceptibility_peak;
  double T_C = 0.0;
  Regime regime = Regime::unimodal;
  CurieDiagnostics diagnostics;
};

struct TRange {
  double lo = 0.05;
  double hi = 2.0;
};

struct CurieOptions {
  int grid_points = 400;  // coarse sweep, at least 200 for the susceptibility method
  unsigned threads = 0;   // 0 = all cores
};

// Strict discrete local maxima of a sequence (end points compare against
// their single neighbour). Plateaus produce no maximum.
std::vector<std::size_t> strict_local_maxima(const std::vector<double>& values);

Regime classify_regime(const ThermoModel& model, double T);

// All three require thermodynamic scaling, spin 1/2 on every site, N >= 2
// and h == 0; otherwise ValidationError. RegimeError when the sought feature
// is absent on the range.
CurieEstimate curie_susceptibility(const ModelConfig& cfg, TRange range, CurieOptions opt = {});
CurieEstimate curie_equal_maxima(const ModelConfig& cfg, TRange range, CurieOptions opt = {});
CurieEstimate curie_weight_minimax(const ModelConfig& cfg, TRange range, CurieOptions opt = {});

// T_C = I [N/2+1]_q [N/2]_q / (2 k_B N ln(N! / ((N+1) (N/2)! (N/2+1)!))),
// q = e^{eta/N}. N must be even.
double curie_analytic(std::int64_t N, double eta, double I = 1.0, double k_B = 1.0);
// 2 sinh^2(eta/4) / (eta^2 ln 2), eta > 0.
double curie_limit(double eta);
// e^{eta/2} / (eta^2 ln 4), the large-eta form of curie_limit.
double curie_limit_asymptotic(double eta);
// Piecewise fit of T_C(eta) on [0, 8].
double curie_fit_reference(double eta);

}  // namespace qks
