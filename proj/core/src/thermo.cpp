#include "qks/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qks/parallel.hpp"

namespace qks {

namespace {

constexpr double kSeriesThreshold = 1e-2;

}  // namespace

double log_sum_exp(const std::vector<double>& x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(top)) return top;
  double s = 0.0;
  for (double v : x) s += std::exp(v - top);
  return top + std::log(s);
}

ZeemanMoments zeeman_moments(HalfInt J, double x) {
  const double A = J.value() + 0.5;
  const double a = 0.5;
  ZeemanMoments out;
  if (x == 0.0) {
    out.log_sum = std::log(2.0 * A);
    out.variance = J.value() * (J.value() + 1.0) / 3.0;
    return out;
  }
  const double ax = std::abs(x);
  out.log_sum = log_sinh(A * ax) - log_sinh(a * ax);
  if (A * ax < kSeriesThreshold) {
    const double A2 = A * A;
    const double a2 = a * a;
    const double d2 = A2 - a2;
    const double d4 = A2 * A2 - a2 * a2;
    const double d6 = A2 * A2 * A2 - a2 * a2 * a2;
    const double x2 = x * x;
    out.mean = x * (d2 / 3.0 - d4 * x2 / 45.0 + 2.0 * d6 * x2 * x2 / 945.0);
    out.variance = d2 / 3.0 - d4 * x2 / 15.0 + 2.0 * d6 * x2 * x2 / 189.0;
    return out;
  }
  const double mean = A / std::tanh(A * ax) - a / std::tanh(a * ax);
  out.mean = std::copysign(mean, x);
  const double sA = std::sinh(A * ax);
  const double sa = std::sinh(a * ax);
  out.variance = std::max(0.0, a * a / (sa * sa) - A * A / (sA * sA));
  return out;
}

ThermoModel::ThermoModel(ModelConfig cfg) : cfg_(std::move(cfg)) {
  blocks_ = analytic_blocks(cfg_);
  e0_ = qks::ground_energy(blocks_, cfg_.zeeman());
}

double ThermoModel::beta(double T) const {
  if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("temperature must be positive");
  return 1.0 / (cfg_.k_B * T);
}

std::vector<double> ThermoModel::log_level_weights(double T) const {
  const double b = beta(T);
  const double x = b * cfg_.zeeman();
  std::vector<double> lz(blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Block& blk = blocks_[k];
    lz[k] = blk.log_multiplicity + zeeman_moments(blk.J, x).log_sum - b * (blk.E - e0_);
  }
  return lz;
}

PartitionResult ThermoModel::partition_function(double T) const {
  const auto lz = log_level_weights(T);
  PartitionResult out;
  out.T = T;
  out.log_Z = log_sum_exp(lz);
  out.ground_energy = e0_;
  out.weights.reserve(blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Block& blk = blocks_[k];
    out.weights.push_back({blk.p, blk.J, blk.E, blk.E - e0_, lz[k], std::exp(lz[k] - out.log_Z)});
  }
  return out;
}

ThermoPoint ThermoModel::observables(double T) const {
  const double b = beta(T);
  const double zeeman = cfg_.zeeman();
  const double x = b * zeeman;
  const std::size_t n = blocks_.size();
  std::vector<double> lz(n);
  std::vector<ZeemanMoments> mom(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Block& blk = blocks_[k];
    mom[k] = zeeman_moments(blk.J, x);
    lz[k] = blk.log_multiplicity + mom[k].log_sum - b * (blk.E - e0_);
  }
  const double log_Z = log_sum_exp(lz);

  std::vector<double> w(n);
  std::vector<double> energy(n);  // block mean energy, corrected
  double mean_m = 0.0;
  double mean_e = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = std::exp(lz[k] - log_Z);
    energy[k] = blocks_[k].E - e0_ - zeeman * mom[k].mean;
    mean_m += w[k] * mom[k].mean;
    mean_e += w[k] * energy[k];
  }
  double var_m = 0.0;
  double var_e = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dm = mom[k].mean - mean_m;
    const double de = energy[k] - mean_e;
    var_m += w[k] * (mom[k].variance + dm * dm);
    var_e += w[k] * (zeeman * zeeman * mom[k].variance + de * de);
  }

  const double N = cfg_.n_sites();
  ThermoPoint p;
  p.T = T;
  p.log_Z = log_Z;
  p.F = -cfg_.k_B * T * log_Z / N;
  p.C_V = cfg_.k_B * b * b * var_e / N;
  p.chi = b * cfg_.gamma * cfg_.gamma * var_m / N;
  p.M = cfg_.gamma * mean_m / N;
  return p;
}

double ThermoModel::free_energy_raw(double T) const {
  const double b = beta(T);
  return -cfg_.k_B * T * (log_sum_exp(log_level_weights(T)) - b * e0_) / cfg_.n_sites();
}

double ThermoModel::log_chi_slope(double T) const {
  if (cfg_.h != 0.0) throw ValidationError("the susceptibility slope is defined at zero field");
  const auto lz = log_level_weights(T);
  const double log_Z = log_sum_exp(lz);
  const std::size_t n = blocks_.size();
  std::vector<double> w(n);
  std::vector<double> g(n);
  double V = 0.0;
  double mean_e = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double J = blocks_[k].J.value();
    w[k] = std::exp(lz[k] - log_Z);
    g[k] = J * (J + 1.0) / 3.0;
    V += w[k] * g[k];
    mean_e += w[k] * (blocks_[k].E - e0_);
  }
  double cov = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cov += w[k] * (g[k] - V) * (blocks_[k].E - e0_ - mean_e);
  }
  return 1.0 / T - cov / (V * cfg_.k_B * T * T);
}

PartitionResult partition_function(const ModelConfig& cfg, double T) {
  return ThermoModel(cfg).partition_function(T);
}

ThermoPoint observables(const ModelConfig& cfg, double T) {
  return ThermoModel(cfg).observables(T);
}

std::vector<ThermoPoint> observables_sweep(const ThermoModel& model,
                                           const std::vector<double>& temperatures,
                                           unsigned threads) {
  std::vector<ThermoPoint> out(temperatures.size());
  parallel_for(temperatures.size(), threads,
               [&](std::size_t i) { out[i] = model.observables(temperatures[i]); });
  return out;
}

}  // namespace qks
