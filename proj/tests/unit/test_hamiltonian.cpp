#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qks/hamiltonian.hpp"
#include "qks/spectrum.hpp"

using namespace qks;
using test::commutator_norm;
using test::max_abs;

namespace {

ModelConfig config(std::vector<HalfInt> spins, double eta, double I = 1.0, double h = 0.0) {
  ModelConfig cfg;
  cfg.spins = std::move(spins);
  cfg.eta = eta;
  cfg.I = I;
  cfg.h = h;
  return cfg;
}

std::vector<std::vector<HalfInt>> layouts() {
  const HalfInt a = kHalf;
  const HalfInt b(1);
  return {{a},       {a, a},    {a, a, a}, {a, a, a, a}, {a, a, a, a, a}, {b, b},
          {b, b, b}, {b, b, b, b}, {b, b, b, b, b}, {a, b}, {b, a, a}, {a, b, a, b}};
}

OperatorMatrix pauli_plus() {
  OperatorMatrix m = OperatorMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

OperatorMatrix pauli_z() {
  OperatorMatrix m = OperatorMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

OperatorMatrix on(const OperatorMatrix& op, int site, int n) {
  return embed(op, site, SiteLayout::uniform(n, kHalf));
}

OperatorMatrix expm_diag(const OperatorMatrix& d) {
  OperatorMatrix out = OperatorMatrix::Zero(d.rows(), d.cols());
  for (Eigen::Index k = 0; k < d.rows(); ++k) out(k, k) = std::exp(d(k, k).real());
  return out;
}

// The three-site q-exchange operator transcribed term by term from its
// Pauli-matrix form (sigma_z = 2 L_z, h = 0).
OperatorMatrix three_site_display(double eta, double I) {
  const int n = 3;
  const Deformation d(eta);
  const OperatorMatrix sp = pauli_plus();
  const OperatorMatrix sm = sp.adjoint();
  auto P = [&](int i) { return on(sp, i, n); };
  auto M = [&](int i) { return on(sm, i, n); };
  auto Z = [&](int i) { return on(pauli_z(), i, n); };
  auto E = [&](const OperatorMatrix& x) { return expm_diag(x); };
  const double ep = std::exp(eta / 2.0);
  const double em = std::exp(-eta / 2.0);
  OperatorMatrix s = M(1) * P(1) * E(eta * 0.5 * (Z(2) + Z(3))) +
                     E(-eta * 0.5 * Z(1)) * M(2) * P(2) * E(eta * 0.5 * Z(3)) +
                     E(-eta * 0.5 * (Z(1) + Z(2))) * M(3) * P(3) +
                     (ep * M(1) * P(2) + em * P(1) * M(2)) * E(-eta * Z(1) / 4.0) *
                         E(eta * Z(2) / 4.0) * E(eta / 2.0 * Z(3)) +
                     (ep * M(1) * P(3) + em * P(1) * M(3)) * E(-eta * Z(1) / 4.0) *
                         E(eta * Z(3) / 4.0) +
                     (ep * M(2) * P(3) + em * P(2) * M(3)) * E(-eta * Z(2) / 4.0) *
                         E(eta * Z(3) / 4.0) * E(-eta * Z(1) / 2.0);
  const OperatorMatrix total_z = 0.5 * (Z(1) + Z(2) + Z(3));
  for (Eigen::Index k = 0; k < 8; ++k) {
    const double m = total_z(k, k).real();
    s(k, k) += q_number(m, d) * q_number(m + 1.0, d);
  }
  s -= 3.0 * q_number(0.5, d) * q_number(1.5, d) * OperatorMatrix::Identity(8, 8);
  return -0.5 * I * s;
}

}  // namespace

TEST(ModelConfig, ScalingAndValidation) {
  ModelConfig cfg = ModelConfig::uniform(100, kHalf);
  cfg.I = 2.0;
  cfg.eta = 9.0;
  EXPECT_EQ(cfg.effective_coupling(), 2.0);
  EXPECT_EQ(cfg.effective_deformation().eta(), 9.0);
  cfg.scaling = Scaling::thermodynamic;
  EXPECT_DOUBLE_EQ(cfg.effective_coupling(), 0.02);
  EXPECT_DOUBLE_EQ(cfg.effective_deformation().eta(), 0.09);
  cfg.gamma = 2.0;
  cfg.h = 0.25;
  EXPECT_EQ(cfg.zeeman(), 0.5);
  cfg.k_B = 0.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  EXPECT_THROW(ModelConfig::uniform(0, kHalf), ValidationError);
}

TEST(SizeCap, RejectsLargeMatrices) {
  ModelConfig cfg = ModelConfig::uniform(14, kHalf);
  EXPECT_THROW(build_qks_coalgebra(cfg), ValidationError);
  cfg = ModelConfig::uniform(4, kHalf);
  cfg.size_cap = 8;
  EXPECT_THROW(build_qks_explicit(cfg), ValidationError);
  EXPECT_THROW(build_ks(cfg), ValidationError);
}

TEST(BuildKs, RoutesAgreeAndCommute) {
  for (const auto& spins : layouts()) {
    for (double I : {1.0, -1.0}) {
      for (double h : {0.0, 0.5}) {
        const ModelConfig cfg = config(spins, 0.0, I, h);
        const OperatorMatrix H = build_ks(cfg);
        EXPECT_LT(max_abs(H - build_ks_pairwise(cfg)), 1e-12);
        EXPECT_LT(max_abs(H - H.adjoint()), 1e-12);
      }
    }
  }
  const ModelConfig three = config({kHalf, kHalf, kHalf}, 0.0);
  const OperatorMatrix H = build_ks(three);
  const LadderPair p = coproduct_pm_undeformed(three.layout());
  EXPECT_LT(commutator_norm(H, p.plus), 1e-12);
  EXPECT_LT(commutator_norm(H, p.minus), 1e-12);
  EXPECT_LT(commutator_norm(H, coproduct_z(three.layout())), 1e-12);
  EXPECT_THROW(build_ks(config({kHalf, kHalf}, 0.1)), ValidationError);
}

TEST(BuildKs, SingleSiteIsZeemanOnly) {
  const ModelConfig cfg = config({HalfInt(1)}, 0.0, 1.0, 0.7);
  OperatorMatrix expected = -0.7 * su2_generators(HalfInt(1)).z;
  EXPECT_LT(max_abs(build_ks(cfg) - expected), 1e-15);
}

TEST(BuildQks, TwoSitesUndeformedIsExchange) {
  for (double I : {1.0, -1.0}) {
    const ModelConfig cfg = config({kHalf, kHalf}, 0.0, I);
    EXPECT_LT(max_abs(build_qks_coalgebra(cfg) - build_ks_pairwise(cfg)), 1e-14);
    EXPECT_LT(max_abs(build_qks_explicit(cfg) - build_ks_pairwise(cfg)), 1e-14);
  }
}

TEST(BuildQks, TwoSiteMatrix) {
  // Diagonal: -I/(sqrt q + 1)^2 ((q^2+3)/(2 sqrt q) - 1/sqrt q, (1-q)/(2 sqrt q) - q, ...);
  // off-diagonal: -I/2 in the (ud, du) entries.
  for (double q : {0.5, 1.0, 2.0}) {
    const double I = 1.3;
    const double s = std::sqrt(q);
    const double pre = -I / ((s + 1.0) * (s + 1.0));
    OperatorMatrix expected = OperatorMatrix::Zero(4, 4);
    expected(0, 0) = pre * ((q * q + 3.0) / (2.0 * s) - 1.0 / s);
    expected(1, 1) = pre * ((1.0 - q) / (2.0 * s) - q);
    expected(2, 2) = pre * ((q - 1.0) * s / 2.0 - 1.0);
    expected(3, 3) = expected(0, 0);
    expected(1, 2) = expected(2, 1) = -I / 2.0;
    const ModelConfig cfg = config({kHalf, kHalf}, std::log(q), I);
    EXPECT_LT(max_abs(build_qks_coalgebra(cfg) - expected), 1e-12) << q;
    EXPECT_LT(max_abs(build_qks_explicit(cfg) - expected), 1e-12) << q;
  }
}

TEST(BuildQks, ThreeSiteDisplay) {
  for (double eta : {-1.0, 0.0, 0.5, std::log(2.0), 2.0}) {
    const ModelConfig cfg = config({kHalf, kHalf, kHalf}, eta, -0.8);
    const OperatorMatrix display = three_site_display(eta, -0.8);
    EXPECT_LT(max_abs(build_qks_explicit(cfg) - display), 1e-12) << eta;
    EXPECT_LT(max_abs(build_qks_coalgebra(cfg) - display), 1e-12) << eta;
  }
}

TEST(BuildQks, RouteEquivalenceGrid) {
  for (const auto& spins : layouts()) {
    for (double eta : {-1.0, 0.0, 0.5, 2.0}) {
      for (double h : {0.0, 0.5}) {
        const ModelConfig cfg = config(spins, eta, -1.0, h);
        const OperatorMatrix a = build_qks_coalgebra(cfg);
        const OperatorMatrix b = build_qks_explicit(cfg);
        EXPECT_LT(max_abs(a - b), 1e-10 * std::max(1.0, max_abs(a)));
        EXPECT_NO_THROW(build_qks_verified(cfg));
      }
    }
  }
}

TEST(BuildQks, ReducesToKsAtZeroDeformation) {
  for (const auto& spins : layouts()) {
    const ModelConfig cfg = config(spins, 0.0, 0.7, 0.3);
    EXPECT_LT(max_abs(build_qks_explicit(cfg) - build_ks(cfg)), 1e-12);
  }
}

TEST(BuildQks, SymmetriesAndHermiticity) {
  for (const auto& spins : layouts()) {
    for (double eta : {-1.0, 0.5, 1.0, 2.0}) {
      for (double h : {0.0, 0.5}) {
        const ModelConfig cfg = config(spins, eta, 1.0, h);
        const OperatorMatrix H = build_qks_coalgebra(cfg);
        const double scale = std::max(1.0, max_abs(H));
        EXPECT_LT(max_abs(H - H.adjoint()), 1e-12 * scale);
        EXPECT_LT(commutator_norm(H, coproduct_z(cfg.layout())), 1e-10 * scale);
        if (h == 0.0) {
          const LadderPair p = collective_ladders(cfg);
          const double s2 = scale * std::max(1.0, max_abs(p.plus));
          EXPECT_LT(commutator_norm(H, p.plus), 1e-10 * s2);
          EXPECT_LT(commutator_norm(H, p.minus), 1e-10 * s2);
        }
      }
    }
  }
}

TEST(BuildQks, FerroAntiferroInversion) {
  for (const auto& spins : layouts()) {
    for (double eta : {0.0, 0.2, 1.0, 2.0}) {
      const auto ferro = diagonalize_oracle(build_qks_coalgebra(config(spins, eta, 1.0)));
      auto anti = diagonalize_oracle(build_qks_coalgebra(config(spins, eta, -1.0)));
      for (double& x : anti) x = -x;
      std::sort(anti.begin(), anti.end());
      ASSERT_EQ(ferro.size(), anti.size());
      for (std::size_t k = 0; k < ferro.size(); ++k) EXPECT_NEAR(ferro[k], anti[k], 1e-10);
    }
  }
}

TEST(BuildQks, ThermodynamicScalingMatchesManualRescale) {
  ModelConfig scaled = config({kHalf, kHalf, kHalf, kHalf}, 2.0, 1.0, 0.3);
  scaled.scaling = Scaling::thermodynamic;
  const ModelConfig manual = config({kHalf, kHalf, kHalf, kHalf}, 0.5, 0.25, 0.3);
  EXPECT_LT(max_abs(build_qks_coalgebra(scaled) - build_qks_coalgebra(manual)), 1e-15);
}
