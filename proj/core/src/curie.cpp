#include "qks/curie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "qks/parallel.hpp"

namespace qks {

namespace {

constexpr double kPeakTolerance = 1e-10;
constexpr int kMaxBisections = 400;
constexpr int kZoomPoints = 17;
constexpr int kMaxZooms = 60;
constexpr double kZoomWidth = 1e-9;

void require_curie_config(const ModelConfig& cfg) {
  cfg.validate();
  if (cfg.scaling != Scaling::thermodynamic) {
    throw ValidationError("Curie estimators require thermodynamic scaling");
  }
  if (cfg.n_sites() < 2) throw ValidationError("Curie estimators need N >= 2");
  for (HalfInt j : cfg.spins) {
    if (j != kHalf) throw ValidationError("Curie estimators are defined for spin 1/2");
  }
  if (cfg.h != 0.0) throw ValidationError("Curie estimators work at zero field");
}

void require_range(TRange r) {
  if (!(r.lo > 0.0) || !(r.hi > r.lo) || !std::isfinite(r.hi)) {
    throw ValidationError("temperature range must satisfy 0 < lo < hi");
  }
}

std::vector<double> linear_grid(TRange r, int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    t[static_cast<std::size_t>(i)] = r.lo + (r.hi - r.lo) * i / (points - 1);
  }
  return t;
}

std::vector<std::int64_t> peak_positions(const ThermoModel& model, double T) {
  const auto lz = model.log_level_weights(T);
  std::vector<std::int64_t> out;
  for (std::size_t i : strict_local_maxima(lz)) out.push_back(model.blocks()[i].p);
  return out;
}

CurieEstimate base_estimate(const ModelConfig& cfg, CurieMethod method) {
  CurieEstimate e;
  e.eta = cfg.eta;
  e.N = cfg.n_sites();
  e.method = method;
  return e;
}

// Golden-section/Brent minimization of f on [lo, hi].
template <class F>
std::pair<double, double> minimize(F f, double lo, double hi, int& iterations) {
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::brent_find_minima(f, lo, hi,
                                                       std::numeric_limits<double>::digits / 2, it);
  iterations = static_cast<int>(it);
  return r;
}

void finish(CurieEstimate& e, const ThermoModel& model) {
  e.diagnostics.peaks = peak_positions(model, e.T_C);
  e.regime = e.diagnostics.peaks.size() >= 2 ? Regime::bimodal : Regime::unimodal;
}

// log z of the lowest-p peak and the highest-p peak; NaN when unimodal.
double peak_difference(const ThermoModel& model, double T) {
  const auto lz = model.log_level_weights(T);
  const auto peaks = strict_local_maxima(lz);
  if (peaks.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return lz[peaks.back()] - lz[peaks.front()];
}

}  // namespace

std::string to_string(CurieMethod m) {
  switch (m) {
    case CurieMethod::susceptibility_peak: return "susceptibility_peak";
    case CurieMethod::equal_maxima: return "equal_maxima";
    case CurieMethod::weight_minimax: return "weight_minimax";
    case CurieMethod::analytic_formula: return "analytic_formula";
    case CurieMethod::limit_formula: return "limit_formula";
    case CurieMethod::fit_reference: return "fit_reference";
  }
  return "unknown";
}

std::string to_string(Regime r) { return r == Regime::bimodal ? "bimodal" : "unimodal"; }

CurieMethod parse_curie_method(const std::string& name) {
  for (auto m : {CurieMethod::susceptibility_peak, CurieMethod::equal_maxima,
                 CurieMethod::weight_minimax, CurieMethod::analytic_formula,
                 CurieMethod::limit_formula, CurieMethod::fit_reference}) {
    if (to_string(m) == name) return m;
  }
  throw ValidationError("unknown Curie method '" + name + "'");
}

std::vector<std::size_t> strict_local_maxima(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  const std::size_t n = values.size();
  if (n == 1) return {0};
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = i == 0 || values[i] > values[i - 1];
    const bool right = i + 1 == n || values[i] > values[i + 1];
    if (left && right) out.push_back(i);
  }
  return out;
}

Regime classify_regime(const ThermoModel& model, double T) {
  return peak_positions(model, T).size() >= 2 ? Regime::bimodal : Regime::unimodal;
}

CurieEstimate curie_susceptibility(const ModelConfig& cfg, TRange range, CurieOptions opt) {
  require_curie_config(cfg);
  require_range(range);
  const ThermoModel model(cfg);
  auto log_chi = [&](double T) { return std::log(model.observables(T).chi); };

  // Steepest secant drop of ln chi between neighbouring grid points; a jump
  // narrower than the grid spacing still shows up as one steep secant.
  auto steepest = [&](const std::vector<double>& t, unsigned threads) {
    std::vector<double> l(t.size());
    parallel_for(t.size(), threads, [&](std::size_t i) { l[i] = log_chi(t[i]); });
    std::vector<double> drop(t.size() - 1);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) drop[i] = -(l[i + 1] - l[i]) / (t[i + 1] - t[i]);
    const auto k = static_cast<std::size_t>(std::max_element(drop.begin(), drop.end()) - drop.begin());
    return std::make_pair(k, drop);
  };

  const auto grid = linear_grid(range, std::max(opt.grid_points, 200));
  const auto [top, drop] = steepest(grid, opt.threads);
  if (top == 0 || top + 2 == grid.size()) {
    throw RegimeError(fmt::format(
        "susceptibility has no interior transition on [{}, {}]", range.lo, range.hi));
  }

  CurieEstimate e = base_estimate(cfg, CurieMethod::susceptibility_peak);
  e.diagnostics.bracket_lo = grid[top];
  e.diagnostics.bracket_hi = grid[top + 1];

  double lo = grid[top - 1];
  double hi = grid[top + 2];
  int zooms = 0;
  while (hi - lo > kZoomWidth * hi && zooms < kMaxZooms) {
    const auto sub = linear_grid({lo, hi}, kZoomPoints);
    const std::size_t k = steepest(sub, opt.threads).first;
    lo = sub[k == 0 ? 0 : k - 1];
    hi = sub[std::min(k + 2, sub.size() - 1)];
    ++zooms;
  }
  int polish = 0;
  const auto [t, neg] = minimize([&](double T) { return -model.log_chi_slope(T); }, lo, hi, polish);
  e.T_C = t;
  e.diagnostics.iterations = zooms + polish;
  e.diagnostics.residual = -neg;

  // Full width at half maximum of the slope above its floor on the range.
  std::vector<double> point(grid.size());
  parallel_for(grid.size(), opt.threads, [&](std::size_t i) { point[i] = model.log_chi_slope(grid[i]); });
  const double floor = std::min(*std::min_element(point.begin(), point.end()),
                                *std::min_element(drop.begin(), drop.end()));
  const double half = floor + 0.5 * (-neg - floor);
  auto crossing = [&](double inside, double outside) {
    for (int i = 0; i < 200 && std::abs(outside - inside) > 1e-12 * inside; ++i) {
      const double mid = 0.5 * (inside + outside);
      (model.log_chi_slope(mid) >= half ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };
  std::size_t left = top + 1;
  while (left > 0 && (grid[left] >= e.T_C || point[left] >= half)) --left;
  std::size_t right = top;
  while (right + 1 < grid.size() && (grid[right] <= e.T_C || point[right] >= half)) ++right;
  const double a = point[left] < half ? crossing(e.T_C, grid[left]) : grid[left];
  const double b = point[right] < half ? crossing(e.T_C, grid[right]) : grid[right];
  e.diagnostics.relative_width = (b - a) / e.T_C;

  finish(e, model);
  return e;
}

CurieEstimate curie_weight_minimax(const ModelConfig& cfg, TRange range, CurieOptions opt) {
  require_curie_config(cfg);
  require_range(range);
  const ThermoModel model(cfg);
  auto top_weight = [&](double T) {
    const auto lz = model.log_level_weights(T);
    return *std::max_element(lz.begin(), lz.end()) - log_sum_exp(lz);
  };
  const auto grid = linear_grid(range, std::max(opt.grid_points, 3));
  std::vector<double> value(grid.size());
  parallel_for(grid.size(), opt.threads, [&](std::size_t i) { value[i] = top_weight(grid[i]); });
  const auto low = static_cast<std::size_t>(
      std::min_element(value.begin(), value.end()) - value.begin());
  if (low == 0 || low + 1 == grid.size()) {
    throw RegimeError(fmt::format("largest level weight has no interior minimum on [{}, {}]",
                                  range.lo, range.hi));
  }
  CurieEstimate e = base_estimate(cfg, CurieMethod::weight_minimax);
  e.diagnostics.bracket_lo = grid[low - 1];
  e.diagnostics.bracket_hi = grid[low + 1];
  const auto [t, v] = minimize(top_weight, grid[low - 1], grid[low + 1], e.diagnostics.iterations);
  e.T_C = t;
  e.diagnostics.residual = v;
  finish(e, model);
  return e;
}

CurieEstimate curie_equal_maxima(const ModelConfig& cfg, TRange range, CurieOptions opt) {
  require_curie_config(cfg);
  require_range(range);
  const ThermoModel model(cfg);
  const auto grid = linear_grid(range, std::max(opt.grid_points, 3));
  std::vector<double> g(grid.size());
  parallel_for(grid.size(), opt.threads,
               [&](std::size_t i) { g[i] = peak_difference(model, grid[i]); });

  if (std::none_of(g.begin(), g.end(), [](double v) { return std::isfinite(v); })) {
    throw RegimeError(fmt::format(
        "level weights are unimodal on [{}, {}]; use the susceptibility method", range.lo,
        range.hi));
  }
  std::size_t k = 0;
  for (; k + 1 < grid.size(); ++k) {
    if (std::isfinite(g[k]) && std::isfinite(g[k + 1]) && g[k] <= 0.0 && g[k + 1] >= 0.0) break;
  }
  if (k + 1 >= grid.size()) {
    throw RegimeError(fmt::format("the two weight peaks never cross on [{}, {}]", range.lo,
                                  range.hi));
  }

  CurieEstimate e = base_estimate(cfg, CurieMethod::equal_maxima);
  e.diagnostics.bracket_lo = grid[k];
  e.diagnostics.bracket_hi = grid[k + 1];
  double lo = grid[k];
  double hi = grid[k + 1];
  double g_mid = g[k];
  double mid = lo;
  if (g[k] == 0.0) {
    hi = lo;
  } else if (g[k + 1] == 0.0) {
    lo = mid = hi;
    g_mid = 0.0;
  }
  int it = 0;
  while (lo < hi && it < kMaxBisections) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    g_mid = peak_difference(model, mid);
    ++it;
    if (!std::isfinite(g_mid)) {
      throw RegimeError(fmt::format("weights became unimodal at T = {} inside the bracket", mid));
    }
    if (std::abs(g_mid) <= kPeakTolerance) break;
    if (g_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  e.T_C = mid;
  e.diagnostics.iterations = it;
  e.diagnostics.residual = g_mid;
  finish(e, model);
  return e;
}

double curie_analytic(std::int64_t N, double eta, double I, double k_B) {
  if (N < 2 || N % 2 != 0) throw ValidationError("the analytic Curie formula needs even N >= 2");
  if (!std::isfinite(eta) || !std::isfinite(I) || !(k_B > 0.0)) {
    throw ValidationError("invalid parameters for the analytic Curie formula");
  }
  const auto n = static_cast<double>(N);
  const Deformation d(eta / n);
  const double L = std::lgamma(n + 1.0) - std::log(n + 1.0) - std::lgamma(n / 2.0 + 1.0) -
                   std::lgamma(n / 2.0 + 2.0);
  if (!(L > 0.0)) throw ValidationError("the analytic Curie formula is undefined for this N");
  const double log_num = log_q_number(n / 2.0 + 1.0, d) + log_q_number(n / 2.0, d);
  return I * std::exp(log_num - std::log(2.0 * k_B * n * L));
}

double curie_limit(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("curie_limit needs eta > 0");
  const double s = std::sinh(eta / 4.0);
  return 2.0 * s * s / (eta * eta * std::log(2.0));
}

double curie_limit_asymptotic(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("curie_limit needs eta > 0");
  return std::exp(eta / 2.0) / (eta * eta * std::log(4.0));
}

double curie_fit_reference(double eta) {
  if (!(eta >= 0.0 && eta <= 8.0)) throw ValidationError("fit reference covers eta in [0, 8]");
  if (eta <= 3.0) return 0.25;
  static constexpr double c[] = {0.25, 0.022959, -0.023077, 0.007164, -0.000779, 0.000035};
  double v = 0.0;
  for (int k = 5; k >= 0; --k) v = v * eta + c[k];
  return v;
}

}  // namespace qks
