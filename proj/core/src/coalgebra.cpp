#include "qks/coalgebra.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qks {

SiteLayout::SiteLayout(std::vector<HalfInt> spins) : spins_(std::move(spins)) {
  if (spins_.empty()) throw ValidationError("layout needs at least one site");
  dims_.reserve(spins_.size());
  for (HalfInt j : spins_) {
    if (j.twice() < 0) throw ValidationError("negative spin " + j.to_string());
    const int dim = static_cast<int>(j.twice()) + 1;
    dims_.push_back(dim);
    if (total_dim_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(dim)) {
      total_dim_ = std::numeric_limits<std::size_t>::max();
    } else {
      total_dim_ *= static_cast<std::size_t>(dim);
    }
  }
}

SiteLayout SiteLayout::uniform(int n_sites, HalfInt j) {
  if (n_sites < 1) throw ValidationError("number of sites must be >= 1");
  return SiteLayout(std::vector<HalfInt>(static_cast<std::size_t>(n_sites), j));
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

OperatorMatrix kron_all(std::span<const OperatorMatrix> factors) {
  OperatorMatrix out = OperatorMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

OperatorMatrix embed(const OperatorMatrix& op, int site, const SiteLayout& layout) {
  if (site < 1 || site > layout.size()) {
    throw ValidationError("site index " + std::to_string(site) + " out of range");
  }
  const int dim = layout.dims()[static_cast<std::size_t>(site - 1)];
  if (op.rows() != dim || op.cols() != dim) {
    throw ValidationError("operator dimension does not match site " + std::to_string(site));
  }
  std::vector<OperatorMatrix> factors;
  factors.reserve(static_cast<std::size_t>(layout.size()));
  for (int k = 1; k <= layout.size(); ++k) {
    factors.push_back(k == site ? op
                                : OperatorMatrix::Identity(layout.dims()[k - 1],
                                                           layout.dims()[k - 1]));
  }
  return kron_all(factors);
}

std::vector<SpinRep> site_reps(const SiteLayout& layout, Deformation d) {
  std::vector<SpinRep> reps;
  reps.reserve(layout.spins().size());
  for (HalfInt j : layout.spins()) reps.push_back(suq2_generators(j, d));
  return reps;
}

OperatorMatrix exp_of_z(const SpinRep& rep, double c) {
  OperatorMatrix out = OperatorMatrix::Zero(rep.dim, rep.dim);
  for (int k = 0; k < rep.dim; ++k) out(k, k) = std::exp(c * rep.z(k, k).real());
  return out;
}

OperatorMatrix coproduct_z(const SiteLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  OperatorMatrix out = OperatorMatrix::Zero(n, n);
  // Diagonal entry is the sum of the site m values of the basis state.
  for (Eigen::Index idx = 0; idx < n; ++idx) {
    Eigen::Index rest = idx;
    double m_total = 0.0;
    for (int s = layout.size() - 1; s >= 0; --s) {
      const int dim = layout.dims()[static_cast<std::size_t>(s)];
      const auto local = static_cast<int>(rest % dim);
      rest /= dim;
      m_total += layout.spins()[static_cast<std::size_t>(s)].value() - local;
    }
    out(idx, idx) = m_total;
  }
  return out;
}

LadderPair coproduct_pm_undeformed(const SiteLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  LadderPair out{OperatorMatrix::Zero(n, n), OperatorMatrix::Zero(n, n)};
  for (int i = 1; i <= layout.size(); ++i) {
    const SpinRep rep = su2_generators(layout.spins()[static_cast<std::size_t>(i - 1)]);
    out.plus += embed(rep.plus, i, layout);
  }
  out.minus = out.plus.adjoint();
  return out;
}

LadderPair coproduct_pm_deformed(const SiteLayout& layout, Deformation d) {
  const auto reps = site_reps(layout, d);
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  const double half = 0.5 * d.eta();
  LadderPair out{OperatorMatrix::Zero(n, n), OperatorMatrix::Zero(n, n)};
  std::vector<OperatorMatrix> factors(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if (k < i) {
        factors[k] = exp_of_z(reps[k], -half);
      } else if (k == i) {
        factors[k] = reps[k].plus;
      } else {
        factors[k] = exp_of_z(reps[k], half);
      }
    }
    out.plus += kron_all(factors);
  }
  out.minus = out.plus.adjoint();
  return out;
}

LadderPair coproduct_pm_iterated(const SiteLayout& layout, Deformation d, Iteration order) {
  const auto reps = site_reps(layout, d);
  const double half = 0.5 * d.eta();
  const std::size_t n = reps.size();

  // Collective (plus, z) of a block grown one site at a time.
  OperatorMatrix plus;
  OperatorMatrix z;
  if (order == Iteration::left_nested) {
    plus = reps[0].plus;
    z = reps[0].z;
    for (std::size_t k = 1; k < n; ++k) {
      const OperatorMatrix& site_plus = reps[k].plus;
      OperatorMatrix block_exp = z;
      for (Eigen::Index r = 0; r < z.rows(); ++r) block_exp(r, r) = std::exp(-half * z(r, r).real());
      const auto dim = static_cast<Eigen::Index>(reps[k].dim);
      plus = kron(block_exp, site_plus) + kron(plus, exp_of_z(reps[k], half));
      z = kron(z, OperatorMatrix::Identity(dim, dim)) +
          kron(OperatorMatrix::Identity(plus.rows() / dim, plus.rows() / dim), reps[k].z);
    }
  } else {
    plus = reps[n - 1].plus;
    z = reps[n - 1].z;
    for (std::size_t k = n - 1; k-- > 0;) {
      OperatorMatrix block_exp = z;
      for (Eigen::Index r = 0; r < z.rows(); ++r) block_exp(r, r) = std::exp(half * z(r, r).real());
      const auto dim = static_cast<Eigen::Index>(reps[k].dim);
      const Eigen::Index block_dim = plus.rows();
      plus = kron(reps[k].plus, block_exp) + kron(exp_of_z(reps[k], -half), plus);
      z = kron(reps[k].z, OperatorMatrix::Identity(block_dim, block_dim)) +
          kron(OperatorMatrix::Identity(dim, dim), z);
    }
  }
  return LadderPair{plus, plus.adjoint()};
}

OperatorMatrix q_bracket_of_diagonal(const OperatorMatrix& op, Deformation d) {
  if (op.rows() != op.cols()) throw ValidationError("q_bracket_of_diagonal: matrix not square");
  OperatorMatrix out = OperatorMatrix::Zero(op.rows(), op.cols());
  for (Eigen::Index r = 0; r < op.rows(); ++r) {
    for (Eigen::Index c = 0; c < op.cols(); ++c) {
      if (r != c && op(r, c) != Complex{}) {
        throw ValidationError("q_bracket_of_diagonal: argument is not diagonal");
      }
    }
    if (op(r, r).imag() != 0.0) {
      throw ValidationError("q_bracket_of_diagonal: diagonal is not real");
    }
    out(r, r) = q_number(op(r, r).real(), d);
  }
  return out;
}

}  // namespace qks
