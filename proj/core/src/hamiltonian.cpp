#include "qks/hamiltonian.hpp"

#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <fmt/format.h>

namespace qks {

ModelConfig ModelConfig::uniform(int n_sites, HalfInt j) {
  if (n_sites < 1) throw ValidationError("number of sites must be >= 1");
  ModelConfig cfg;
  cfg.spins.assign(static_cast<std::size_t>(n_sites), j);
  return cfg;
}

bool ModelConfig::is_uniform() const {
  for (HalfInt j : spins) {
    if (j != spins.front()) return false;
  }
  return true;
}

double ModelConfig::effective_coupling() const {
  return scaling == Scaling::thermodynamic ? I / n_sites() : I;
}

Deformation ModelConfig::effective_deformation() const {
  const Deformation d(eta);
  return scaling == Scaling::thermodynamic ? d.scaled_down(n_sites()) : d;
}

void ModelConfig::validate() const {
  if (spins.empty()) throw ValidationError("model needs at least one site");
  for (HalfInt j : spins) {
    if (j.twice() < 0) throw ValidationError("negative spin " + j.to_string());
  }
  for (double v : {I, h, gamma, eta}) {
    if (!std::isfinite(v)) throw ValidationError("model parameters must be finite");
  }
  if (!(k_B > 0.0) || !std::isfinite(k_B)) throw ValidationError("k_B must be positive");
}

void enforce_size_cap(const SiteLayout& layout, std::size_t cap) {
  if (layout.total_dim() > cap) {
    throw ValidationError(fmt::format(
        "matrix dimension {} exceeds the size cap {}; use the analytic spectrum instead",
        layout.total_dim(), cap));
  }
}

double casimir_constant(const std::vector<HalfInt>& spins, Deformation d) {
  double k = 0.0;
  for (HalfInt j : spins) k += q_casimir_value(j, d);
  return k;
}

double max_abs_entry(const OperatorMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix shapes differ");
  }
  return max_abs_entry(a - b);
}

namespace {

void prepare(const ModelConfig& cfg) {
  cfg.validate();
  enforce_size_cap(cfg.layout(), cfg.size_cap);
}

// Diagonal [x]_q [x + 1]_q of a real diagonal matrix.
OperatorMatrix casimir_diagonal(const OperatorMatrix& z, Deformation d) {
  const auto n = z.rows();
  OperatorMatrix out = OperatorMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double m = z(r, r).real();
    out(r, r) = q_number(m, d) * q_number(m + 1.0, d);
  }
  return out;
}

// Sparse product; the coproducts have O(N dim) nonzeros.
OperatorMatrix sparse_product(const OperatorMatrix& a, const OperatorMatrix& b) {
  const Eigen::SparseMatrix<Complex> sa = a.sparseView();
  const Eigen::SparseMatrix<Complex> sb = b.sparseView();
  return OperatorMatrix(sa * sb);
}

OperatorMatrix coalgebra_form(const ModelConfig& cfg, const LadderPair& ladders,
                              Deformation d) {
  const SiteLayout layout = cfg.layout();
  const OperatorMatrix z = coproduct_z(layout);
  const auto n = z.rows();
  OperatorMatrix casimir = sparse_product(ladders.minus, ladders.plus) + casimir_diagonal(z, d);
  casimir -= casimir_constant(cfg.spins, d) * OperatorMatrix::Identity(n, n);
  return -0.5 * cfg.effective_coupling() * casimir - cfg.zeeman() * z;
}

}  // namespace

LadderPair collective_ladders(const ModelConfig& cfg) {
  return coproduct_pm_deformed(cfg.layout(), cfg.effective_deformation());
}

OperatorMatrix build_ks_coalgebra(const ModelConfig& cfg) {
  prepare(cfg);
  if (cfg.eta != 0.0) throw ValidationError("build_ks requires eta == 0");
  return coalgebra_form(cfg, coproduct_pm_undeformed(cfg.layout()), Deformation::undeformed());
}

OperatorMatrix build_ks_pairwise(const ModelConfig& cfg) {
  prepare(cfg);
  if (cfg.eta != 0.0) throw ValidationError("build_ks requires eta == 0");
  const SiteLayout layout = cfg.layout();
  const int n_sites = layout.size();
  std::vector<SpinRep> reps;
  std::vector<OperatorMatrix> jx;
  std::vector<OperatorMatrix> jy;
  for (HalfInt j : cfg.spins) {
    reps.push_back(su2_generators(j));
    const SpinRep& r = reps.back();
    jx.emplace_back(0.5 * (r.plus + r.minus));
    jy.emplace_back(Complex(0.0, -0.5) * (r.plus - r.minus));
  }
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  OperatorMatrix pairs = OperatorMatrix::Zero(n, n);
  std::vector<OperatorMatrix> factors(static_cast<std::size_t>(n_sites));
  auto identity_factors = [&] {
    for (int k = 0; k < n_sites; ++k) {
      factors[static_cast<std::size_t>(k)] =
          OperatorMatrix::Identity(reps[static_cast<std::size_t>(k)].dim,
                                   reps[static_cast<std::size_t>(k)].dim);
    }
  };
  for (int a = 0; a < n_sites; ++a) {
    for (int b = a + 1; b < n_sites; ++b) {
      const auto ua = static_cast<std::size_t>(a);
      const auto ub = static_cast<std::size_t>(b);
      for (int comp = 0; comp < 3; ++comp) {
        identity_factors();
        const auto& ops_a = comp == 0 ? jx[ua] : comp == 1 ? jy[ua] : reps[ua].z;
        const auto& ops_b = comp == 0 ? jx[ub] : comp == 1 ? jy[ub] : reps[ub].z;
        factors[ua] = ops_a;
        factors[ub] = ops_b;
        pairs += kron_all(factors);
      }
    }
  }
  OperatorMatrix zeeman = OperatorMatrix::Zero(n, n);
  for (int i = 1; i <= n_sites; ++i) zeeman += embed(reps[static_cast<std::size_t>(i - 1)].z, i, layout);
  return -cfg.effective_coupling() * pairs - cfg.zeeman() * zeeman;
}

OperatorMatrix build_ks(const ModelConfig& cfg) {
  OperatorMatrix coalgebra = build_ks_coalgebra(cfg);
  const OperatorMatrix pairwise = build_ks_pairwise(cfg);
  const double diff = max_abs_difference(coalgebra, pairwise);
  if (diff > 1e-12 * std::max(1.0, max_abs_entry(coalgebra))) {
    throw ConsistencyError(fmt::format("KS routes disagree by {:.3e}", diff));
  }
  return coalgebra;
}

OperatorMatrix build_qks_coalgebra(const ModelConfig& cfg) {
  prepare(cfg);
  const Deformation d = cfg.effective_deformation();
  return coalgebra_form(cfg, coproduct_pm_deformed(cfg.layout(), d), d);
}

OperatorMatrix build_qks_explicit(const ModelConfig& cfg) {
  prepare(cfg);
  const SiteLayout layout = cfg.layout();
  const Deformation d = cfg.effective_deformation();
  const double eta = d.eta();
  const auto reps = site_reps(layout, d);
  const int n_sites = layout.size();
  const auto n = static_cast<Eigen::Index>(layout.total_dim());

  auto identity = [&](std::size_t k) {
    return OperatorMatrix::Identity(reps[k].dim, reps[k].dim).eval();
  };
  std::vector<OperatorMatrix> factors(static_cast<std::size_t>(n_sites));
  OperatorMatrix sum = OperatorMatrix::Zero(n, n);

  // exp[-eta sum_{k<i} L_z^(k)] L_-^(i) L_+^(i) exp[eta sum_{k>i} L_z^(k)]
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if (k < i) {
        factors[k] = exp_of_z(reps[k], -eta);
      } else if (k == i) {
        factors[k] = reps[k].minus * reps[k].plus;
      } else {
        factors[k] = exp_of_z(reps[k], eta);
      }
    }
    sum += kron_all(factors);
  }

  // (e^{eta/2} L_-^(i) L_+^(r) + e^{-eta/2} L_+^(i) L_-^(r))
  //   exp[-eta L_z^(i)/2] exp[eta L_z^(r)/2]
  //   prod_{t<i} exp[-eta L_z^(t)] prod_{k>r} exp[eta L_z^(k)]
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t r = i + 1; r < reps.size(); ++r) {
      for (int branch = 0; branch < 2; ++branch) {
        const bool lower_first = branch == 0;
        for (std::size_t k = 0; k < reps.size(); ++k) {
          if (k < i) {
            factors[k] = exp_of_z(reps[k], -eta);
          } else if (k == i) {
            factors[k] = (lower_first ? reps[k].minus : reps[k].plus) * exp_of_z(reps[k], -0.5 * eta);
          } else if (k < r) {
            factors[k] = identity(k);
          } else if (k == r) {
            factors[k] = (lower_first ? reps[k].plus : reps[k].minus) * exp_of_z(reps[k], 0.5 * eta);
          } else {
            factors[k] = exp_of_z(reps[k], eta);
          }
        }
        sum += std::exp((lower_first ? 0.5 : -0.5) * eta) * kron_all(factors);
      }
    }
  }

  const OperatorMatrix z = coproduct_z(layout);
  sum += casimir_diagonal(z, d);
  sum -= casimir_constant(cfg.spins, d) * OperatorMatrix::Identity(n, n);
  return -0.5 * cfg.effective_coupling() * sum - cfg.zeeman() * z;
}

OperatorMatrix build_qks_verified(const ModelConfig& cfg) {
  OperatorMatrix coalgebra = build_qks_coalgebra(cfg);
  const OperatorMatrix expl = build_qks_explicit(cfg);
  const double diff = max_abs_difference(coalgebra, expl);
  if (diff > 1e-10 * std::max(1.0, max_abs_entry(coalgebra))) {
    throw ConsistencyError(fmt::format("q-KS assembly routes disagree by {:.3e}", diff));
  }
  return coalgebra;
}

}  // namespace qks
