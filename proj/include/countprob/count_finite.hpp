#pragma once

#include <cstdint>
#include <vector>

#include "countprob/model.hpp"

namespace countprob {

/// Largest event count accepted by finite_count_pmf.
inline constexpr std::int64_t kMaxFiniteN = 100000;

/// Exponent A(x, y) = Σ_d Σ_t a[d][t] x^d y^t of the bivariate generating
/// function whose exponential yields the finite-N count pmf. The x-degree d
/// is the correlation order and t the number of arguments equal to one.
class BivariatePolynomial {
 public:
  explicit BivariatePolynomial(int l_max);

  int l_max() const noexcept { return l_max_; }
  /// a[d][t] for 1 <= d <= l_max, 0 <= t <= d.
  double coefficient(int d, int t) const;
  void set_coefficient(int d, int t, double value);
  /// The y-polynomial multiplying x^d.
  const std::vector<double>& row(int d) const;

  double evaluate(double x, double y) const;

 private:
  int l_max_;
  std::vector<std::vector<double>> rows_;
};

/// p(s) = binom(N, s) pattern_weight[s]; exact to double precision.
Pmf count_pmf_from_joint(const ExchangeableJoint& joint);

/// a[1][1] = C_1/N, a[1][0] = 1 - C_1/N and, for l >= 2,
/// a[l][t] = (-1)^(l-t) C_l / (N^l t! (l-t)!). Throws Internal if the
/// identity A(x, 1) = x fails beyond rounding.
BivariatePolynomial build_exponent(const CorrelationModel& model);

/// Count pmf of N events correlated up to order l_max:
/// p_N(s) = N! [x^N y^s] exp(A(x, y)).
///
/// Runs the power-series recurrence n F_n = Σ_l l A_l F_{n-l} on the scaled
/// polynomials H_n = n! F_n, which keeps every intermediate at unit scale
/// (H_n(1) = 1 for all n). Each step is a handful of double-double axpy
/// updates over y. The result carries a first-order rounding bound derived from the same
/// recurrence run on |a|. Cost is O(N^2 l_max^2); N is capped at kMaxFiniteN.
Pmf finite_count_pmf(const CorrelationModel& model);

/// p_N(N) from the sum over multiplicities k_l of order-l factors with
/// all arguments one, each weighted by Π_l (1/l!)^k_l M(n_l, l, k_l)
/// (C_l/N^l)^k_l using exact big-integer combinatorial factors. Refuses
/// (OutOfRange) when more than kMaxFullCountTerms multiplicity vectors exist.
double p_full_count(const CorrelationModel& model);

inline constexpr std::int64_t kMaxFullCountTerms = 10'000'000;

}  // namespace countprob
