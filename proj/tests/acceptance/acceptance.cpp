// Acceptance checks: one PASS/FAIL line per criterion, plus INFO lines.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qks/curie.hpp"
#include "qks/hamiltonian.hpp"
#include "qks/qcg.hpp"
#include "qks/spectrum.hpp"
#include "qks/thermo.hpp"

using namespace qks;

namespace {

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  fmt::print("{} criterion {}: {}\n", pass ? "PASS" : "FAIL", id, detail);
  std::fflush(stdout);
}

void info(const std::string& detail) {
  fmt::print("INFO {}\n", detail);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct GridPoint {
  ModelConfig cfg;
  std::string label;
};

std::vector<GridPoint> oracle_grid() {
  std::vector<GridPoint> out;
  auto add = [&](int n, HalfInt j) {
    for (double eta : {0.0, 0.2, 1.0, 2.0}) {
      for (double I : {1.0, -1.0}) {
        for (double h : {0.0, 0.5}) {
          ModelConfig cfg = ModelConfig::uniform(n, j);
          cfg.eta = eta;
          cfg.I = I;
          cfg.h = h;
          out.push_back({cfg, fmt::format("N={} j={} eta={} I={} h={}", n, j.to_string(), eta, I, h)});
        }
      }
    }
  };
  for (int n = 2; n <= 8; ++n) add(n, kHalf);
  for (int n = 2; n <= 4; ++n) add(n, HalfInt(1));
  return out;
}

double max_abs(const OperatorMatrix& m) { return max_abs_entry(m); }

std::vector<double> sorted_eigenvalues(const OperatorMatrix& H) {
  auto ev = diagonalize_oracle(H);
  std::sort(ev.begin(), ev.end());
  return ev;
}

void criterion1(const std::vector<GridPoint>& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string where;
  for (const auto& g : grid) {
    const auto analytic = expanded_eigenvalues(analytic_levels(g.cfg, MultiplicityMode::exact));
    const double dev = max_relative_deviation(sorted_eigenvalues(build_qks_coalgebra(g.cfg)), analytic);
    if (dev > worst) {
      worst = dev;
      where = g.label;
    }
  }
  const double t = seconds_since(t0);
  report("1", worst <= 1e-9 && t < 60.0,
         fmt::format("oracle vs analytic spectrum, {} configurations, max relative deviation {:.3e} ({}) "
                     "tolerance 1e-9, {:.1f} s (limit 60 s)",
                     grid.size(), worst, where, t));
}

OperatorMatrix printed_two_site(double q, double I, bool corrected) {
  const double s = std::sqrt(q);
  const double pre = -I / ((s + 1.0) * (s + 1.0));
  OperatorMatrix m = OperatorMatrix::Zero(4, 4);
  m(0, 0) = pre * ((q * q + 3.0) / (2.0 * s) - 1.0 / s);
  m(1, 1) = pre * ((1.0 - q) / (2.0 * s) - q);
  m(2, 2) = pre * ((q - 1.0) * s / 2.0 - 1.0);
  m(3, 3) = m(0, 0);
  const double off = corrected ? (s + 1.0) * (s + 1.0) / 2.0 : 0.5;
  m(1, 2) = m(2, 1) = pre * off;
  return m;
}

void criterion2(const std::vector<GridPoint>& grid) {
  double worst = 0.0;
  for (const auto& g : grid) {
    const OperatorMatrix a = build_qks_coalgebra(g.cfg);
    const OperatorMatrix b = build_qks_explicit(g.cfg);
    worst = std::max(worst, max_abs_difference(a, b) / std::max(1.0, max_abs(a)));
  }
  report("2a", worst <= 1e-10,
         fmt::format("explicit vs coalgebra route, max entry difference {:.3e} tolerance 1e-10", worst));

  double printed = 0.0;
  double corrected = 0.0;
  double routes = 0.0;
  for (double q : {0.5, 1.0, 2.0}) {
    for (double I : {1.0, -1.0}) {
      ModelConfig cfg = ModelConfig::uniform(2, kHalf);
      cfg.eta = std::log(q);
      cfg.I = I;
      const OperatorMatrix a = build_qks_coalgebra(cfg);
      const OperatorMatrix b = build_qks_explicit(cfg);
      printed = std::max({printed, max_abs(a - printed_two_site(q, I, false)),
                          max_abs(b - printed_two_site(q, I, false))});
      corrected = std::max({corrected, max_abs(a - printed_two_site(q, I, true)),
                            max_abs(b - printed_two_site(q, I, true))});
      routes = std::max(routes, max_abs(a - b));
    }
  }
  report("2b", printed <= 1e-12,
         fmt::format("N=2 matrix vs the printed 4x4 display verbatim (off-diagonal 1/2 inside the prefactor), "
                     "max difference {:.3e} tolerance 1e-12",
                     printed));
  report("2c", corrected <= 1e-12 && routes <= 1e-12,
         fmt::format("N=2 matrix vs the printed display with off-diagonal -I/2, max difference {:.3e}, "
                     "routes differ by {:.3e}, tolerance 1e-12",
                     corrected, routes));
}

void criterion3(const std::vector<GridPoint>& grid) {
  double herm = 0.0;
  double cz = 0.0;
  double cpm = 0.0;
  double inversion = 0.0;
  for (const auto& g : grid) {
    const OperatorMatrix H = build_qks_coalgebra(g.cfg);
    herm = std::max(herm, max_abs(H - H.adjoint()));
    const OperatorMatrix z = coproduct_z(g.cfg.layout());
    cz = std::max(cz, max_abs(H * z - z * H));
    if (g.cfg.h == 0.0) {
      const LadderPair p = collective_ladders(g.cfg);
      cpm = std::max({cpm, max_abs(H * p.plus - p.plus * H), max_abs(H * p.minus - p.minus * H)});
      if (g.cfg.I > 0) {
        ModelConfig flipped = g.cfg;
        flipped.I = -g.cfg.I;
        auto a = sorted_eigenvalues(H);
        auto b = sorted_eigenvalues(build_qks_coalgebra(flipped));
        std::reverse(b.begin(), b.end());
        for (std::size_t k = 0; k < a.size(); ++k) inversion = std::max(inversion, std::abs(a[k] + b[k]));
      }
    }
  }
  report("3", herm <= 1e-12 && cz <= 1e-10 && cpm <= 1e-10 && inversion <= 1e-10,
         fmt::format("hermiticity {:.2e} (1e-12), [H,Lz] {:.2e} (1e-10), [H,L+-] at h=0 {:.2e} (1e-10), "
                     "I -> -I negation {:.2e} (1e-10)",
                     herm, cz, cpm, inversion));
}

void criterion4() {
  bool dims = true;
  for (HalfInt j : {kHalf, HalfInt(1)}) {
    for (int n = 1; n <= 60; ++n) {
      BigInt total = 0;
      for (const Block& b : analytic_blocks(ModelConfig::uniform(n, j), MultiplicityMode::exact)) {
        total += *b.multiplicity * (b.J.twice() + 1);
      }
      BigInt expected = 1;
      for (int k = 0; k < n; ++k) expected *= (j.twice() + 1);
      dims = dims && total == expected;
    }
  }
  auto decomposition = [](int n) {
    std::map<std::int64_t, BigInt> out;
    for (const Block& b : analytic_blocks(ModelConfig::uniform(n, kHalf), MultiplicityMode::exact)) {
      out[b.J.twice()] = *b.multiplicity;
    }
    return out;
  };
  using M = std::map<std::int64_t, BigInt>;
  const bool small = decomposition(2) == M{{2, 1}, {0, 1}} && decomposition(3) == M{{3, 1}, {1, 2}} &&
                       decomposition(4) == M{{4, 1}, {2, 3}, {0, 2}} &&
                       decomposition(5) == M{{5, 1}, {3, 4}, {1, 5}};
  info(fmt::format("N=5 spin-1/2: d(1/2) = {} from the multiplicity formula; a listing with four "
                   "doublets, which would leave the dimension sum at 30 instead of 32",
                   decomposition(5)[1].str()));
  bool methods = true;
  for (int n = 1; n <= 200; ++n) {
    for (int t = n % 2; t <= n; t += 2) {
      const HalfInt J = HalfInt::from_twice(t);
      const BigInt a = multiplicity_dp(J, n, kHalf);
      methods = methods && a == multiplicity_alternating(J, n, kHalf) && a == multiplicity_spin_half(J, n);
    }
  }
  report("4", dims && small && methods,
         fmt::format("dimension sums exact for N<=60 j in {{1/2,1}}: {}; block decompositions N=2..5: {}; "
                     "three multiplicity methods agree for N<=200: {}",
                     dims, small, methods));
}

StateVector ket(const std::string& s) {
  Eigen::Index i = 0;
  for (char c : s) i = 2 * i + (c == 'u' ? 0 : 1);
  StateVector v = StateVector::Zero(Eigen::Index(1) << s.size());
  v(i) = 1.0;
  return v;
}

double named_state_error(double q) {
  const Deformation d = Deformation::from_q(q);
  const double s2 = std::sqrt(q_number(2, d));
  const double s3 = std::sqrt(q_number(3, d));
  const double r = std::sqrt(q);
  const double f = std::pow(q, 0.25);
  struct Named {
    int n;
    HalfInt J;
    int copy;
    HalfInt m;
    StateVector v;
  };
  const HalfInt h = kHalf;
  const std::vector<Named> named{
      {2, HalfInt(1), 1, HalfInt(0), (f * ket("du") + ket("ud") / f) / s2},
      {2, HalfInt(0), 1, HalfInt(0), (-ket("du") / f + f * ket("ud")) / s2},
      {3, HalfInt::from_twice(3), 1, -h, (r * ket("ddu") + ket("dud") + ket("udd") / r) / s3},
      {3, HalfInt::from_twice(3), 1, h, (r * ket("duu") + ket("udu") + ket("uud") / r) / s3},
      {3, h, 1, -h, (r * ket("udd") + q * ket("dud") - q_number(2, d) * ket("ddu")) / (f * s2 * s3)},
      {3, h, 1, h, f * (q_number(2, d) * ket("uud") - ket("udu") / q - ket("duu") / r) / (s2 * s3)},
      {3, h, 2, -h, (f * ket("udd") - ket("dud") / f) / s2},
      {3, h, 2, h, (-ket("duu") / f + f * ket("udu")) / s2},
  };
  double worst = 0.0;
  for (const auto& s : named) {
    const CouplingTransform t = couple_all(SiteLayout::uniform(s.n, kHalf), d);
    double best = 1e300;
    for (std::size_t c = 0; c < t.labels.size(); ++c) {
      const auto& l = t.labels[c];
      if (l.J != s.J || l.copy != s.copy || l.m != s.m) continue;
      const StateVector col = t.matrix.col(static_cast<Eigen::Index>(c));
      best = std::min((col - s.v).norm(), (col + s.v).norm());
    }
    worst = std::max(worst, best);
  }
  return worst;
}

void criterion5() {
  double residual = 0.0;
  double unitarity = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (double eta : {0.0, 1.0}) {
      for (double I : {1.0, -1.0}) {
        ModelConfig cfg = ModelConfig::uniform(n, kHalf);
        cfg.eta = eta;
        cfg.I = I;
        const Deformation d = cfg.effective_deformation();
        const OperatorMatrix H = build_qks_coalgebra(cfg);
        const CouplingTransform t = couple_all(cfg.layout(), d);
        const double K = casimir_constant(cfg.spins, d);
        const auto dim = t.matrix.rows();
        unitarity = std::max(unitarity, max_abs(t.matrix.adjoint() * t.matrix - OperatorMatrix::Identity(dim, dim)));
        for (std::size_t c = 0; c < t.labels.size(); ++c) {
          const double J = t.labels[c].J.value();
          const double E = -0.5 * I * (q_number(J, d) * q_number(J + 1, d) - K);
          const StateVector v = t.matrix.col(static_cast<Eigen::Index>(c));
          residual = std::max(residual, (H * v - E * v).norm());
        }
      }
    }
  }
  double named = 0.0;
  for (double q : {0.5, 2.0, 3.0}) named = std::max(named, named_state_error(q));
  report("5", residual <= 1e-9 && named <= 1e-10 && unitarity <= 1e-10,
         fmt::format("eigenvector residual {:.2e} (1e-9), named two- and three-site states up to phase {:.2e} "
                     "(1e-10), unitarity {:.2e} (1e-10)",
                     residual, named, unitarity));
}

void criterion6() {
  double chi_err = 0.0;
  double cv_err = 0.0;
  double m0 = 0.0;
  double high_t = 0.0;
  for (int n : {4, 20, 200}) {
    for (double eta : {0.0, 2.0, 6.0}) {
      for (double T : {0.2, 0.5, 1.5}) {
        ModelConfig cfg = ModelConfig::uniform(n, kHalf);
        cfg.eta = eta;
        cfg.scaling = Scaling::thermodynamic;
        const ThermoModel model(cfg);
        const ThermoPoint p = model.observables(T);
        m0 = std::max(m0, std::abs(p.M));
        auto F_h = [&](double h) {
          ModelConfig c = cfg;
          c.h = h;
          return ThermoModel(c).free_energy_raw(T);
        };
        auto d2h = [&](double s) { return (F_h(s) - 2.0 * F_h(0.0) + F_h(-s)) / (s * s); };
        const double dh = 0.02 * 2.0 * T / n;
        const double chi_fd = -(4.0 * d2h(dh) - d2h(2.0 * dh)) / 3.0;
        chi_err = std::max(chi_err, std::abs(chi_fd - p.chi) / p.chi);
        auto d2T = [&](double s) {
          return (model.free_energy_raw(T + s) - 2.0 * model.free_energy_raw(T) + model.free_energy_raw(T - s)) /
                 (s * s);
        };
        const double cv_fd = -T * (4.0 * d2T(5e-3 * T) - d2T(1e-2 * T)) / 3.0;
        cv_err = std::max(cv_err, std::abs(cv_fd - p.C_V) / p.C_V);
      }
    }
    ModelConfig cfg = ModelConfig::uniform(n, kHalf);
    cfg.scaling = Scaling::thermodynamic;
    cfg.eta = 3.0;
    const double lz = ThermoModel(cfg).partition_function(1e6).log_Z;
    high_t = std::max(high_t, std::abs(lz / (n * std::log(2.0)) - 1.0));
  }
  report("6", chi_err <= 1e-6 && cv_err <= 1e-6 && m0 <= 1e-10 && high_t <= 1e-6,
         fmt::format("chi vs -d2F/dh2 {:.2e} (1e-6), C_V vs -T d2F/dT2 {:.2e} (1e-6), |M(h=0)| {:.2e} (1e-10), "
                     "log_Z/(N ln 2) - 1 at T=1e6 {:.2e} (1e-6)",
                     chi_err, cv_err, m0, high_t));
}

ModelConfig curie_cfg(std::int64_t n, double eta) {
  ModelConfig cfg = ModelConfig::uniform(static_cast<int>(n), kHalf);
  cfg.eta = eta;
  cfg.scaling = Scaling::thermodynamic;
  return cfg;
}

void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  const CurieEstimate e = curie_susceptibility(curie_cfg(100000, 0.0), {});
  report("7", std::abs(e.T_C - 0.25) <= 0.005,
         fmt::format("susceptibility estimate N=1e5 eta=0: T_C = {:.6f}, expected 0.25 +- 0.005 ({:.1f} s)", e.T_C,
                     seconds_since(t0)));
}

void criterion8() {
  const std::vector<std::pair<double, double>> cases{{3.0, 0.270}, {4.0, 0.294}, {5.0, 0.340}, {9.0, 0.904}};
  bool ok = true;
  std::string detail;
  for (auto [eta, expected] : cases) {
    const double t = curie_weight_minimax(curie_cfg(100, eta), {}).T_C;
    ok = ok && std::abs(t - expected) <= 0.01;
    detail += fmt::format("T_C({})={:.4f} (exp {}) ", eta, t, expected);
    try {
      info(fmt::format("N=100 eta={} susceptibility estimate {:.4f}", eta,
                       curie_susceptibility(curie_cfg(100, eta), {}).T_C));
    } catch (const std::exception& ex) {
      info(fmt::format("N=100 eta={} susceptibility estimate unavailable: {}", eta, ex.what()));
    }
  }
  report("8a", ok, "N=100 weight-minimax estimates: " + detail + "tolerance 0.01");
  const CurieEstimate e = curie_equal_maxima(curie_cfg(100000, 9.0), {});
  report("8b", std::abs(e.T_C - 0.786189) <= 0.001,
         fmt::format("equal-maxima estimate N=1e5 eta=9: T_C = {:.6f}, expected 0.786189 +- 0.001", e.T_C));
}

void criterion9() {
  double worst = 0.0;
  for (double eta : {8.0, 10.0, 12.0}) {
    worst = std::max(worst, std::abs(curie_analytic(100000000, eta) / curie_limit(eta) - 1.0));
  }
  const double asym = std::abs(curie_limit_asymptotic(20.0) / curie_limit(20.0) - 1.0);
  report("9", worst <= 1e-3 && asym <= 0.01,
         fmt::format("finite-N formula at N=1e8 vs limit, max relative difference {:.2e} (1e-3); asymptote at "
                     "eta=20 relative difference {:.2e} (1e-2)",
                     worst, asym));
}

void criterion10() {
  const ThermoModel flat(curie_cfg(100000, 0.0));
  bool unimodal = true;
  int tested = 0;
  for (double T = 0.05; T <= 2.0 + 1e-12; T += 0.01, ++tested) {
    unimodal = unimodal && classify_regime(flat, T) == Regime::unimodal;
  }
  const CurieEstimate e = curie_equal_maxima(curie_cfg(100000, 9.0), {});
  const ThermoModel deformed(curie_cfg(100000, 9.0));
  const auto lz = deformed.log_level_weights(e.T_C);
  std::vector<std::size_t> peaks = strict_local_maxima(lz);
  double agreement = 1.0;
  if (peaks.size() == 2) agreement = std::abs(std::expm1(lz[peaks[1]] - lz[peaks[0]]));
  bool bimodal_near = true;
  for (double dT : {-0.002, 0.0, 0.002}) {
    bimodal_near = bimodal_near && classify_regime(deformed, e.T_C + dT) == Regime::bimodal;
  }
  report("10", unimodal && peaks.size() == 2 && bimodal_near && agreement <= 1e-6,
         fmt::format("eta=0 unimodal at all {} tested T: {}; eta=9 strict maxima at T_C: {} (at p = {}), bimodal "
                     "within +-0.002: {}; peak values agree to {:.2e} (1e-6)",
                     tested, unimodal, peaks.size(), fmt::join(peaks, ", "), bimodal_near, agreement));
}

void guarded(const std::string& id, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  const auto grid = oracle_grid();
  guarded("1", [&] { criterion1(grid); });
  guarded("2", [&] { criterion2(grid); });
  guarded("3", [&] { criterion3(grid); });
  guarded("4", criterion4);
  guarded("5", criterion5);
  guarded("6", criterion6);
  guarded("7", criterion7);
  guarded("8", criterion8);
  guarded("9", criterion9);
  guarded("10", criterion10);
  fmt::print("{} failing line(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
