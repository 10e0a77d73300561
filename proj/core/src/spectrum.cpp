#include "qks/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace qks {

namespace {

constexpr std::int64_t kExactSpinHalfLimit = 10'000;
// Budget (site count x vector length) for the exact big-integer convolution.
constexpr std::int64_t kExactConvolutionBudget = 400'000;
// Budget for the double-precision log-domain convolution.
constexpr double kLogConvolutionBudget = 5e8;

// Index of Omega(J) in the descending-M count vector: (sum j) - J.
std::int64_t validate_block(HalfInt J, std::int64_t N, HalfInt j) {
  if (N < 1) throw ValidationError("N must be >= 1");
  if (j.twice() < 0) throw ValidationError("site spin must be >= 0");
  if (J.twice() < 0) throw ValidationError("block spin J must be >= 0");
  const std::int64_t twice_total = N * j.twice();
  if (J.twice() > twice_total) {
    throw ValidationError(fmt::format("J = {} exceeds N j = {}", J.to_string(),
                                      HalfInt::from_twice(twice_total).to_string()));
  }
  if ((twice_total - J.twice()) % 2 != 0) {
    throw ValidationError(fmt::format("J = {} and N j have different integrality", J.to_string()));
  }
  return (twice_total - J.twice()) / 2;
}

// Coefficients c[0..len) of (1 + x + ... + x^{2j})^N, truncated.
std::vector<BigInt> power_coefficients(std::int64_t N, std::int64_t width, std::int64_t len) {
  std::vector<BigInt> c(static_cast<std::size_t>(len), BigInt(0));
  c[0] = 1;
  std::vector<BigInt> next(c.size());
  std::int64_t reach = 0;
  for (std::int64_t n = 0; n < N; ++n) {
    reach = std::min(len - 1, reach + width - 1);
    // Running window sum of the previous row.
    BigInt window = 0;
    for (std::int64_t k = 0; k <= reach; ++k) {
      window += c[static_cast<std::size_t>(k)];
      if (k - width >= 0) window -= c[static_cast<std::size_t>(k - width)];
      next[static_cast<std::size_t>(k)] = window;
    }
    std::swap(c, next);
  }
  return c;
}

BigInt omega_alternating(std::int64_t s, std::int64_t N, std::int64_t width) {
  if (s < 0) return 0;
  BigInt sum = 0;
  const std::int64_t k_max = std::min(N, s / width);
  for (std::int64_t k = 0; k <= k_max; ++k) {
    BigInt term = binomial_exact(N, k) * binomial_exact(s - width * k + N - 1, N - 1);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// ln of Omega(M) for every M, descending, by log-domain convolution.
std::vector<double> log_magnetization_counts(const std::vector<HalfInt>& spins) {
  std::vector<double> c{0.0};
  for (HalfInt j : spins) {
    const auto width = static_cast<std::size_t>(j.twice() + 1);
    std::vector<double> next(c.size() + width - 1, -std::numeric_limits<double>::infinity());
    for (std::size_t a = 0; a < c.size(); ++a) {
      for (std::size_t b = 0; b < width; ++b) next[a + b] = log_add(next[a + b], c[a]);
    }
    c = std::move(next);
  }
  return c;
}

// ln(exp(a) - exp(b)) for a >= b; -inf when equal.
double log_sub(double a, double b) {
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double r = b - a;
  if (r >= 0.0) return -std::numeric_limits<double>::infinity();
  return a + std::log1p(-std::exp(r));
}

std::int64_t twice_total_spin(const std::vector<HalfInt>& spins) {
  std::int64_t t = 0;
  for (HalfInt j : spins) t += j.twice();
  return t;
}

bool all_spin_half(const ModelConfig& cfg) {
  return std::all_of(cfg.spins.begin(), cfg.spins.end(), [](HalfInt j) { return j == kHalf; });
}

}  // namespace

double log_big(const BigInt& x) {
  if (x <= 0) throw ValidationError("log of a non-positive integer");
  const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(x));
  if (bits < 1000) return std::log(x.convert_to<double>());
  const std::int64_t shift = bits - 60;
  const BigInt top = x >> static_cast<unsigned>(shift);
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

BigInt multiplicity_dp(HalfInt J, std::int64_t N, HalfInt j) {
  const std::int64_t s = validate_block(J, N, j);
  const auto c = power_coefficients(N, j.twice() + 1, s + 1);
  BigInt d = c[static_cast<std::size_t>(s)];
  if (s >= 1) d -= c[static_cast<std::size_t>(s - 1)];
  return d;
}

BigInt multiplicity_alternating(HalfInt J, std::int64_t N, HalfInt j) {
  const std::int64_t s = validate_block(J, N, j);
  const std::int64_t width = j.twice() + 1;
  return omega_alternating(s, N, width) - omega_alternating(s - 1, N, width);
}

BigInt multiplicity_spin_half(HalfInt J, std::int64_t N) {
  const std::int64_t p = validate_block(J, N, kHalf);
  BigInt d = binomial_exact(N, p);
  if (p >= 1) d -= binomial_exact(N, p - 1);
  return d;
}

double log_multiplicity_spin_half(HalfInt J, std::int64_t N) {
  const std::int64_t p = validate_block(J, N, kHalf);
  const auto n = static_cast<double>(N);
  const auto pd = static_cast<double>(p);
  return log_binomial(n, pd) + std::log((n - 2.0 * pd + 1.0) / (n - pd + 1.0));
}

BigInt multiplicity(HalfInt J, std::int64_t N, HalfInt j) {
  const BigInt a = multiplicity_dp(J, N, j);
  const BigInt b = multiplicity_alternating(J, N, j);
  if (a != b) {
    throw ConsistencyError(fmt::format("multiplicity routes disagree at J={} N={} j={}",
                                       J.to_string(), N, j.to_string()));
  }
  if (j == kHalf && multiplicity_spin_half(J, N) != a) {
    throw ConsistencyError(fmt::format("spin-1/2 closed form disagrees at J={} N={}",
                                       J.to_string(), N));
  }
  return a;
}

std::vector<BigInt> magnetization_counts(const std::vector<HalfInt>& spins) {
  std::vector<BigInt> c{BigInt(1)};
  for (HalfInt j : spins) {
    if (j.twice() < 0) throw ValidationError("site spin must be >= 0");
    const auto width = static_cast<std::size_t>(j.twice() + 1);
    std::vector<BigInt> next(c.size() + width - 1, BigInt(0));
    for (std::size_t a = 0; a < c.size(); ++a) {
      for (std::size_t b = 0; b < width; ++b) next[a + b] += c[a];
    }
    c = std::move(next);
  }
  return c;
}

std::vector<Block> analytic_blocks(const ModelConfig& cfg, MultiplicityMode mode) {
  cfg.validate();
  const std::int64_t N = cfg.n_sites();
  const std::int64_t twice_total = twice_total_spin(cfg.spins);
  const std::int64_t n_blocks = twice_total / 2 + 1;  // J = S, S-1, ..., >= 0
  const bool spin_half = all_spin_half(cfg);

  bool exact = mode == MultiplicityMode::exact;
  if (mode == MultiplicityMode::automatic) {
    exact = spin_half ? N <= kExactSpinHalfLimit
                      : N * (twice_total + 1) <= kExactConvolutionBudget;
  }

  std::vector<std::optional<BigInt>> exact_d(static_cast<std::size_t>(n_blocks));
  std::vector<double> log_d(static_cast<std::size_t>(n_blocks),
                            -std::numeric_limits<double>::infinity());

  if (spin_half) {
    if (exact) {
      BigInt prev = 0;
      BigInt binom = 1;  // C(N, p)
      for (std::int64_t p = 0; p < n_blocks; ++p) {
        if (p > 0) binom = binom * (N - p + 1) / p;
        exact_d[static_cast<std::size_t>(p)] = binom - prev;
        prev = binom;
      }
    } else {
      for (std::int64_t p = 0; p < n_blocks; ++p) {
        log_d[static_cast<std::size_t>(p)] =
            log_multiplicity_spin_half(HalfInt::from_twice(twice_total - 2 * p), N);
      }
    }
  } else if (exact) {
    const auto c = magnetization_counts(cfg.spins);
    for (std::int64_t p = 0; p < n_blocks; ++p) {
      BigInt d = c[static_cast<std::size_t>(p)];
      if (p > 0) d -= c[static_cast<std::size_t>(p - 1)];
      exact_d[static_cast<std::size_t>(p)] = d;
    }
  } else {
    double cost = 0.0;
    double len = 1.0;
    for (HalfInt j : cfg.spins) {
      cost += len * static_cast<double>(j.twice() + 1);
      len += static_cast<double>(j.twice());
    }
    if (cost > kLogConvolutionBudget) {
      throw ValidationError("multiplicities for this many sites of spin > 1/2 are out of range");
    }
    const auto c = log_magnetization_counts(cfg.spins);
    for (std::int64_t p = 0; p < n_blocks; ++p) {
      log_d[static_cast<std::size_t>(p)] =
          p == 0 ? c[0]
                 : log_sub(c[static_cast<std::size_t>(p)], c[static_cast<std::size_t>(p - 1)]);
    }
  }

  const Deformation d = cfg.effective_deformation();
  const double K = casimir_constant(cfg.spins, d);
  const double coupling = cfg.effective_coupling();

  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(n_blocks));
  for (std::int64_t p = 0; p < n_blocks; ++p) {
    const auto up = static_cast<std::size_t>(p);
    Block b;
    b.J = HalfInt::from_twice(twice_total - 2 * p);
    b.p = p;
    if (exact) {
      if (*exact_d[up] <= 0) continue;
      b.multiplicity = exact_d[up];
      b.log_multiplicity = log_big(*exact_d[up]);
    } else {
      if (!std::isfinite(log_d[up])) continue;
      b.log_multiplicity = log_d[up];
    }
    const double J = b.J.value();
    b.casimir = q_number(J, d) * q_number(J + 1.0, d);
    b.E = -0.5 * coupling * (b.casimir - K);
    if (!std::isfinite(b.E)) {
      throw ValidationError("block energies overflow; reduce eta or use thermodynamic scaling");
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

double ground_energy(const std::vector<Block>& blocks, double zeeman) {
  double e0 = std::numeric_limits<double>::infinity();
  for (const Block& b : blocks) e0 = std::min(e0, b.E - std::abs(zeeman) * b.J.value());
  return e0;
}

double ground_energy(const ModelConfig& cfg) {
  return ground_energy(analytic_blocks(cfg), cfg.zeeman());
}

double SpectrumLine::log_weight() const {
  return m ? log_multiplicity : log_multiplicity + std::log(2.0 * J.value() + 1.0);
}

std::optional<BigInt> SpectrumLine::weight() const {
  if (!multiplicity) return std::nullopt;
  if (m) return multiplicity;
  return *multiplicity * (J.twice() + 1);
}

std::vector<SpectrumLine> analytic_levels(const ModelConfig& cfg, MultiplicityMode mode) {
  const auto blocks = analytic_blocks(cfg, mode);
  const double zeeman = cfg.zeeman();
  const double e0 = ground_energy(blocks, zeeman);
  const bool split = cfg.h != 0.0;

  if (split) {
    std::size_t count = 0;
    for (const Block& b : blocks) count += static_cast<std::size_t>(b.J.twice() + 1);
    if (count > kMaxZeemanLines) {
      throw ValidationError(fmt::format("{} Zeeman lines exceed the limit of {}", count,
                                        kMaxZeemanLines));
    }
  }

  std::vector<SpectrumLine> lines;
  for (const Block& b : blocks) {
    SpectrumLine line;
    line.J = b.J;
    line.p = b.p;
    line.multiplicity = b.multiplicity;
    line.log_multiplicity = b.log_multiplicity;
    if (!split) {
      line.E = b.E;
      line.E_corr = b.E - e0;
      lines.push_back(line);
      continue;
    }
    for (HalfInt m = b.J; m >= -b.J; m -= HalfInt(1)) {
      line.m = m;
      line.E = b.E - zeeman * m.value();
      line.E_corr = line.E - e0;
      lines.push_back(line);
    }
  }
  return lines;
}

DensityOfStates density_of_states(const std::vector<SpectrumLine>& lines, int bins) {
  if (lines.empty()) throw ValidationError("density of states needs at least one level");
  if (bins < 1) throw ValidationError("bins must be >= 1");
  double top = 0.0;
  for (const auto& l : lines) top = std::max(top, l.E_corr);
  if (top == 0.0) bins = 1;

  DensityOfStates dos;
  dos.width = top / bins;
  const bool exact = std::all_of(lines.begin(), lines.end(),
                                 [](const SpectrumLine& l) { return l.multiplicity.has_value(); });
  const auto nb = static_cast<std::size_t>(bins);
  std::vector<double> log_w(nb, -std::numeric_limits<double>::infinity());
  std::vector<BigInt> w(nb, BigInt(0));
  for (const auto& l : lines) {
    std::size_t k = 0;
    if (l.E_corr > 0.0 && dos.width > 0.0) {
      const double pos = std::ceil(l.E_corr / dos.width) - 1.0;
      k = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    }
    log_w[k] = log_add(log_w[k], l.log_weight());
    if (exact) w[k] += *l.weight();
  }
  for (std::size_t k = 0; k < nb; ++k) {
    const double lo = dos.width * static_cast<double>(k);
    const double hi = k + 1 == nb ? top : dos.width * static_cast<double>(k + 1);
    dos.lower.push_back(lo);
    dos.upper.push_back(hi);
    dos.center.push_back(0.5 * (lo + hi));
    if (exact) {
      dos.weight.emplace_back(w[k]);
      dos.log10_weight.push_back(w[k] > 0 ? log_big(w[k]) / std::log(10.0)
                                          : -std::numeric_limits<double>::infinity());
    } else {
      dos.weight.emplace_back(std::nullopt);
      dos.log10_weight.push_back(log_w[k] / std::log(10.0));
    }
  }
  return dos;
}

std::vector<double> expanded_eigenvalues(const std::vector<SpectrumLine>& lines, std::size_t cap) {
  std::vector<double> out;
  for (const auto& l : lines) {
    const auto w = l.weight();
    if (!w) throw ValidationError("expanded eigenvalues need exact multiplicities");
    if (*w + out.size() > cap) throw ValidationError("expanded spectrum exceeds the size cap");
    out.insert(out.end(), w->convert_to<std::size_t>(), l.E);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> diagonalize_oracle(const OperatorMatrix& H, std::size_t cap) {
  if (H.rows() != H.cols()) throw ValidationError("oracle needs a square matrix");
  if (static_cast<std::size_t>(H.rows()) > cap) {
    throw ValidationError(fmt::format("matrix dimension {} exceeds the size cap {}", H.rows(), cap));
  }
  if (H.rows() == 0) return {};
  const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw ValidationError(fmt::format("matrix is not Hermitian (asymmetry {:.3e})", asym));
  }
  const Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(H);
  if (solver.info() != Eigen::Success) throw ConsistencyError("eigendecomposition failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double norm = values.cwiseAbs().maxCoeff();
  const OperatorMatrix residual =
      H * solver.eigenvectors() - solver.eigenvectors() * values.cast<Complex>().asDiagonal();
  for (Eigen::Index k = 0; k < residual.cols(); ++k) {
    if (residual.col(k).norm() > 1e-9 * std::max(norm, std::numeric_limits<double>::min())) {
      throw ConsistencyError(fmt::format("eigenpair {} residual {:.3e} too large", k,
                                         residual.col(k).norm()));
    }
  }
  return {values.data(), values.data() + values.size()};
}

double max_relative_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw ValidationError(fmt::format("spectra differ in size ({} vs {})", a.size(), b.size()));
  }
  double scale = 1.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  double dev = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) dev = std::max(dev, std::abs(a[k] - b[k]));
  return dev / scale;
}

}  // namespace qks
