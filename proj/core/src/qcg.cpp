#include "qks/qcg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

namespace qks {

namespace {

std::int64_t whole(HalfInt a) {
  if (!a.is_integer()) throw ValidationError("inconsistent quantum numbers");
  return a.as_integer();
}

void check_projection(HalfInt j, HalfInt m) {
  if (j.twice() < 0) throw ValidationError("spin must be >= 0");
  if (m > j || m < -j || !(j - m).is_integer()) {
    throw ValidationError(fmt::format("m = {} is not a projection of j = {}", m.to_string(),
                                      j.to_string()));
  }
}

// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

struct Channel {
  std::vector<HalfInt> path;
  Eigen::MatrixXd states;  // columns m = J, J-1, ..., -J
  HalfInt J() const { return path.back(); }
};

std::vector<Channel> couple(const SiteLayout& layout, Deformation d, bool maximal_only) {
  const auto& spins = layout.spins();
  std::vector<Channel> channels;
  {
    const HalfInt j1 = spins.front();
    const auto dim = static_cast<Eigen::Index>(j1.twice() + 1);
    channels.push_back({{j1}, Eigen::MatrixXd::Identity(dim, dim)});
  }
  for (std::size_t site = 1; site < spins.size(); ++site) {
    const HalfInt s = spins[site];
    const auto ds = static_cast<Eigen::Index>(s.twice() + 1);
    std::vector<Channel> next;
    for (const Channel& ch : channels) {
      const HalfInt Jp = ch.J();
      const Eigen::Index old_dim = ch.states.rows();
      const HalfInt lowest = maximal_only ? Jp + s : HalfInt::from_twice(std::abs(Jp.twice() - s.twice()));
      for (HalfInt J = Jp + s; J >= lowest; J -= HalfInt(1)) {
        Channel out;
        out.path = ch.path;
        out.path.push_back(J);
        out.states = Eigen::MatrixXd::Zero(old_dim * ds, J.twice() + 1);
        for (HalfInt M = J; M >= -J; M -= HalfInt(1)) {
          const auto col = static_cast<Eigen::Index>(integer_difference(J, M));
          for (HalfInt ms = s; ms >= -s; ms -= HalfInt(1)) {
            const HalfInt mp = M - ms;
            if (mp > Jp || mp < -Jp) continue;
            const double c = qcg_coefficient(Jp, mp, s, ms, J, M, d);
            if (c == 0.0) continue;
            const auto pcol = static_cast<Eigen::Index>(integer_difference(Jp, mp));
            const auto offset = static_cast<Eigen::Index>(integer_difference(s, ms));
            for (Eigen::Index r = 0; r < old_dim; ++r) {
              out.states(r * ds + offset, col) += c * ch.states(r, pcol);
            }
          }
        }
        next.push_back(std::move(out));
      }
    }
    channels = std::move(next);
  }
  return channels;
}


// Alternating sum of the coefficient formula, with the integer arguments
// A = 2 j2, B = j1 + m1, C = j1 + j2 - m, D = j2 - m2, a = j1 + j2 - j, E = j + j1 + j2 + 1:
//   sum_n (-1)^{a+n} q^{n B / 2} [A-n]! [C-n]! / ([n]! [D-n]! [a-n]! [E-n]!).
struct SumArgs {
  std::int64_t A, B, C, D, a, E;
};

struct SumResult {
  bool accurate = false;
  int sign = 0;
  double log_abs = 0.0;
};

// Accept when the result keeps `margin` digits after cancellation.
SumResult judge(double log10_big, double log10_sum, int sign, double log_abs, int digits, int margin) {
  SumResult r;
  r.accurate = log10_big - log10_sum + margin <= digits;
  r.sign = sign;
  r.log_abs = log_abs;
  return r;
}

SumResult double_sum(const SumArgs& s, Deformation d) {
  auto lf = [&](std::int64_t n) { return q_factorial_log(n, d); };
  const std::int64_t n_max = std::min(s.a, s.D);
  std::vector<double> logs;
  std::vector<int> signs;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    logs.push_back(lf(s.A - n) + 0.5 * d.eta() * static_cast<double>(n * s.B) + lf(s.C - n) - lf(n) -
                   lf(s.D - n) - lf(s.a - n) - lf(s.E - n));
    signs.push_back((s.a + n) % 2 == 0 ? 1 : -1);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  CompensatedSum sum;
  for (std::size_t k = 0; k < logs.size(); ++k) sum.add(signs[k] * std::exp(logs[k] - top));
  const double v = sum.value();
  if (logs.size() == 1) return {true, signs[0], top};
  if (v == 0.0) return {};
  return judge(0.0, std::log10(std::abs(v)), v < 0 ? -1 : 1, top + std::log(std::abs(v)), 16, 14);
}

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::cpp_bin_float_100;
using Float300 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<300>>;
using Float1000 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<1000>>;

template <class Real>
SumResult precise_sum(const SumArgs& s, double eta) {
  const std::int64_t top = std::max({s.A, s.C, s.E});
  const Real half_eta = Real(eta) / 2;
  const Real unit = eta == 0.0 ? Real(1) : Real(sinh(half_eta));
  std::vector<Real> fact(static_cast<std::size_t>(top) + 1);
  fact[0] = 1;
  for (std::int64_t k = 1; k <= top; ++k) {
    const Real qk = eta == 0.0 ? Real(k) : Real(sinh(half_eta * k) / unit);
    fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * qk;
  }
  auto F = [&](std::int64_t n) -> const Real& { return fact[static_cast<std::size_t>(n)]; };
  Real sum = 0;
  Real big = 0;
  for (std::int64_t n = 0; n <= std::min(s.a, s.D); ++n) {
    Real t = F(s.A - n) * F(s.C - n) / (F(n) * F(s.D - n) * F(s.a - n) * F(s.E - n));
    if (n > 0 && s.B != 0) t *= exp(half_eta * (n * s.B));
    if ((s.a + n) % 2 != 0) t = -t;
    sum += t;
    big = std::max(big, Real(abs(t)));
  }
  const int digits = std::numeric_limits<Real>::digits10;
  if (sum == 0) return {digits >= 250, 0, 0.0};
  const Real mag = abs(sum);
  SumResult r = judge(static_cast<double>(log10(big)), static_cast<double>(log10(mag)), sum < 0 ? -1 : 1,
                      static_cast<double>(log(mag)), digits, 20);
  // At the widest precision an unresolvable sum is an exact zero.
  if (!r.accurate && digits >= 900) return {true, 0, 0.0};
  return r;
}
}  // namespace

double qcg_coefficient(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m,
                       Deformation d) {
  check_projection(j1, m1);
  check_projection(j2, m2);
  check_projection(j, m);
  if (j > j1 + j2 || j.twice() < std::abs(j1.twice() - j2.twice()) ||
      !(j1 + j2 - j).is_integer()) {
    throw ValidationError(fmt::format("j = {} is not in {} x {}", j.to_string(), j1.to_string(),
                                      j2.to_string()));
  }
  if (m != m1 + m2) return 0.0;

  const double eta = d.eta();
  auto lf = [&](HalfInt x) { return q_factorial_log(whole(x), d); };
  const HalfInt one(1);
  const HalfInt a = j1 + j2 - j;  // -j + j1 + j2

  const double log_prefactor =
      eta * (0.5 * (j1.value() * m2.value() - j2.value() * m1.value()) -
             0.25 * a.value() * (j + j1 + j2 + one).value());
  const double log_root =
      0.5 * (log_q_number((j + j).value() + 1.0, d) + lf(j + m) + lf(j2 - m2) + lf(j + j1 - j2) +
             lf(a) + lf(j + j1 + j2 + one) - lf(j - m) - lf(j1 - m1) - lf(j1 + m1) - lf(j2 + m2) -
             lf(j - j1 + j2));

  const SumArgs args{whole(j2 + j2), whole(j1 + m1), whole(j1 + j2 - m), whole(j2 - m2), whole(a),
                     whole(j + j1 + j2 + one)};
  SumResult s = double_sum(args, d);
  if (!s.accurate) s = precise_sum<Float50>(args, eta);
  if (!s.accurate) s = precise_sum<Float100>(args, eta);
  if (!s.accurate) s = precise_sum<Float300>(args, eta);
  if (!s.accurate) s = precise_sum<Float1000>(args, eta);
  if (s.sign == 0) return 0.0;
  return s.sign * std::exp(log_prefactor + log_root + s.log_abs);
}

CouplingTransform couple_all(const SiteLayout& layout, Deformation d, std::size_t cap) {
  if (layout.total_dim() > cap) {
    throw ValidationError(fmt::format("dimension {} exceeds the size cap {}", layout.total_dim(),
                                      cap));
  }
  auto channels = couple(layout, d, false);
  std::stable_sort(channels.begin(), channels.end(), [](const Channel& x, const Channel& y) {
    if (x.J() != y.J()) return x.J() > y.J();
    return std::lexicographical_compare(y.path.begin(), y.path.end(), x.path.begin(),
                                        x.path.end());
  });

  const auto dim = static_cast<Eigen::Index>(layout.total_dim());
  CouplingTransform out;
  out.matrix = OperatorMatrix::Zero(dim, dim);
  Eigen::Index col = 0;
  int copy = 0;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    copy = (c > 0 && channels[c - 1].J() == channels[c].J()) ? copy + 1 : 1;
    const Channel& ch = channels[c];
    for (Eigen::Index k = 0; k < ch.states.cols(); ++k, ++col) {
      out.matrix.col(col) = ch.states.col(k).cast<Complex>();
      out.labels.push_back({ch.J(), copy, ch.J() - HalfInt(static_cast<int>(k)), ch.path});
    }
  }
  if (col != dim) throw ConsistencyError("coupled basis does not span the product space");
  return out;
}

StateVector q_dicke_state(int N, HalfInt m, Deformation d) {
  if (N < 1 || N > 20) throw ValidationError("q-Dicke states need 1 <= N <= 20");
  const HalfInt J = HalfInt::from_twice(N);
  check_projection(J, m);
  const auto channels = couple(SiteLayout::uniform(N, kHalf), d, true);
  return channels.front().states.col(static_cast<Eigen::Index>(integer_difference(J, m)))
      .cast<Complex>();
}

}  // namespace qks
