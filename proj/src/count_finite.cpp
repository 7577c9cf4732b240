#include "countprob/count_finite.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "countprob/error.hpp"
#include "countprob/kernels.hpp"
#include "double_double.hpp"
#include "summation.hpp"

namespace countprob {
namespace {

double log_big(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const auto top = boost::multiprecision::msb(x);
  if (top < 1000) return std::log(x.convert_to<double>());
  const auto shift = top - 60;
  return std::log(BigInt(x >> shift).convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

CorrelationModel finite_model(const CorrelationModel& model) {
  auto valid = validate_model(model);
  if (!valid.n()) throw Error(ErrorKind::BadShape, "finite-N computation needs n");
  if (*valid.n() > kMaxFiniteN) {
    throw Error(ErrorKind::OutOfRange, "n=" + std::to_string(*valid.n()) + " exceeds the ceiling " +
                                           std::to_string(kMaxFiniteN));
  }
  return valid;
}

}  // namespace

BivariatePolynomial::BivariatePolynomial(int l_max) : l_max_(l_max), rows_(static_cast<std::size_t>(l_max) + 1) {
  if (l_max < 1) throw Error(ErrorKind::OutOfRange, "l_max must be >= 1");
  for (int d = 1; d <= l_max; ++d) rows_[d].assign(d + 1, 0.0);
}

double BivariatePolynomial::coefficient(int d, int t) const { return row(d).at(t); }

void BivariatePolynomial::set_coefficient(int d, int t, double value) {
  if (d < 1 || d > l_max_ || t < 0 || t > d) throw Error(ErrorKind::OutOfRange, "bivariate index out of range");
  rows_[d][t] = value;
}

const std::vector<double>& BivariatePolynomial::row(int d) const {
  if (d < 1 || d > l_max_) throw Error(ErrorKind::OutOfRange, "x-degree out of range");
  return rows_[d];
}

double BivariatePolynomial::evaluate(double x, double y) const {
  double total = 0.0;
  double xp = 1.0;
  for (int d = 1; d <= l_max_; ++d) {
    xp *= x;
    double inner = 0.0;
    for (int t = d; t >= 0; --t) inner = inner * y + rows_[d][t];
    total += xp * inner;
  }
  return total;
}

Pmf count_pmf_from_joint(const ExchangeableJoint& joint) {
  Pmf pmf;
  const int n = joint.n();
  pmf.values.resize(n + 1);
  for (int s = 0; s <= n; ++s) pmf.values[s] = binomial(n, s) * joint.pattern_weight()[s];
  return pmf;
}

BivariatePolynomial build_exponent(const CorrelationModel& model) {
  const auto valid = finite_model(model);
  const double n = static_cast<double>(*valid.n());
  BivariatePolynomial a(valid.l_max());
  const double c1 = valid.coefficient(1);
  a.set_coefficient(1, 1, c1 / n);
  a.set_coefficient(1, 0, 1.0 - c1 / n);
  for (int l = 2; l <= valid.l_max(); ++l) {
    const double scale = valid.coefficient(l) / std::pow(n, l);
    for (int t = 0; t <= l; ++t) {
      const double sign = ((l - t) % 2 == 0) ? 1.0 : -1.0;
      a.set_coefficient(l, t, sign * scale / (factorial(t) * factorial(l - t)));
    }
  }
  // A(x, 1) = x: row 1 sums to one, higher rows are alternating binomial sums.
  for (int l = 1; l <= a.l_max(); ++l) {
    double sum = 0.0;
    double magnitude = 0.0;
    for (double v : a.row(l)) {
      sum += v;
      magnitude += std::abs(v);
    }
    const double target = (l == 1) ? 1.0 : 0.0;
    if (std::abs(sum - target) > 1e-14 * std::max(1.0, magnitude)) {
      throw Error(ErrorKind::Internal, "exponent row " + std::to_string(l) + " violates A(x,1)=x");
    }
  }
  return a;
}

Pmf finite_count_pmf(const CorrelationModel& model) {
  const auto valid = finite_model(model);
  const auto exponent = build_exponent(valid);
  const int big_n = static_cast<int>(*valid.n());
  const int l_max = valid.l_max();

  // Ring of the last l_max + 1 scaled polynomials H_n, each of degree n, held
  // as double-double (hi, lo) pairs. Cancellation between terms grows with n
  // for large or sign-mixed coefficients; the extra precision keeps the
  // result accurate to the final rounding.
  const int ring = l_max + 1;
  std::vector<std::vector<double>> hi(ring, std::vector<double>(big_n + 1, 0.0));
  std::vector<std::vector<double>> lo(ring, std::vector<double>(big_n + 1, 0.0));
  hi[0][0] = 1.0;

  std::vector<double> abs_row_sum(l_max + 1, 0.0);
  int terms_per_coefficient = 0;
  for (int l = 1; l <= l_max; ++l) {
    for (double v : exponent.row(l)) abs_row_sum[l] += std::abs(v);
    terms_per_coefficient += l + 1;
  }
  // bound[n] is H_n computed with |a| and evaluated at y = 1.
  std::vector<double> bound(big_n + 1, 0.0);
  bound[0] = 1.0;

  for (int n = 1; n <= big_n; ++n) {
    auto& cur_hi = hi[n % ring];
    auto& cur_lo = lo[n % ring];
    std::fill(cur_hi.begin(), cur_hi.begin() + n + 1, 0.0);
    std::fill(cur_lo.begin(), cur_lo.begin() + n + 1, 0.0);
    double bound_n = 0.0;
    kernels::DoubleDouble weight{0.0, 0.0};
    for (int l = 1; l <= std::min(l_max, n); ++l) {
      // l (n-1)! / (n-l)!, built exactly in double-double.
      weight = {static_cast<double>(l), 0.0};
      for (int j = 1; j < l; ++j) weight = detail::dd_mul(weight, {static_cast<double>(n - j), 0.0});
      const auto len = static_cast<std::size_t>(n - l + 1);
      const std::span<const double> src_hi(hi[(n - l) % ring].data(), len);
      const std::span<const double> src_lo(lo[(n - l) % ring].data(), len);
      const auto& row = exponent.row(l);
      for (int t = 0; t <= l; ++t) {
        if (row[t] == 0.0) continue;
        const auto coef = detail::dd_mul(weight, {row[t], 0.0});
        kernels::axpy_dd(coef, src_hi, src_lo, std::span<double>(cur_hi.data() + t, len),
                         std::span<double>(cur_lo.data() + t, len));
      }
      bound_n += (weight.hi + weight.lo) * abs_row_sum[l] * bound[n - l];
    }
    bound[n] = bound_n;
    if (!std::isfinite(bound_n)) {
      throw Error(ErrorKind::Overflow, "magnitude bound overflowed at n=" + std::to_string(n) +
                                           "; coefficients too large for double precision");
    }
  }

  Pmf pmf;
  const auto& last_hi = hi[big_n % ring];
  const auto& last_lo = lo[big_n % ring];
  pmf.values.resize(big_n + 1);
  double largest = 0.0;
  for (int s = 0; s <= big_n; ++s) {
    pmf.values[s] = last_hi[s] + last_lo[s];
    largest = std::max(largest, std::abs(pmf.values[s]));
  }
  pmf.tail_bound = 0.0;
  // Final rounding to double plus the first-order double-double error.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  pmf.error_estimate = 0.5 * eps * largest + 8.0 * eps * eps * bound[big_n] * big_n * (terms_per_coefficient + 1);
  return pmf;
}

double p_full_count(const CorrelationModel& model) {
  const auto valid = finite_model(model);
  const std::int64_t big_n = *valid.n();
  const int l_max = valid.l_max();

  std::vector<int> allowed;
  for (int l = 1; l <= l_max; ++l) {
    if (valid.coefficient(l) != 0.0) allowed.push_back(l);
  }
  if (allowed.empty()) return 0.0;

  // Number of multiplicity vectors = partitions of N into allowed parts.
  {
    std::vector<double> ways(big_n + 1, 0.0);
    ways[0] = 1.0;
    for (int part : allowed) {
      for (std::int64_t v = part; v <= big_n; ++v) ways[v] += ways[v - part];
    }
    if (ways[big_n] > static_cast<double>(kMaxFullCountTerms)) {
      throw Error(ErrorKind::OutOfRange, "p_full_count: too many multiplicity vectors for n=" + std::to_string(big_n));
    }
  }

  std::vector<double> log_g(l_max + 1);
  std::vector<bool> negative(l_max + 1);
  std::vector<BigInt> l_fact(l_max + 1, BigInt(1));
  for (int l = 1; l <= l_max; ++l) {
    const double g = valid.coefficient(l) / std::pow(static_cast<double>(big_n), l);
    log_g[l] = std::log(std::abs(g));
    negative[l] = g < 0.0;
    for (int j = 2; j <= l; ++j) l_fact[l] *= j;
  }

  detail::CompensatedSum total;
  std::vector<std::int64_t> k(allowed.size(), 0);
  // Walk the allowed orders in increasing l; `remaining` is n_l, the number
  // of arguments not yet assigned to a lower-order factor.
  std::function<void(std::size_t, std::int64_t)> walk = [&](std::size_t idx, std::int64_t remaining) {
    if (idx == allowed.size()) {
      if (remaining != 0) return;
      BigInt combinatorial = 1;
      BigInt denominator = 1;
      double log_weight = 0.0;
      bool sign_negative = false;
      std::int64_t n_l = big_n;
      for (std::size_t i = 0; i < allowed.size(); ++i) {
        const int l = allowed[i];
        combinatorial *= m_factor(n_l, l, k[i]);
        denominator *= boost::multiprecision::pow(l_fact[l], static_cast<unsigned>(k[i]));
        n_l -= l * k[i];
        log_weight += static_cast<double>(k[i]) * log_g[l];
        if (negative[l] && (k[i] % 2 == 1)) sign_negative = !sign_negative;
      }
      const double magnitude = std::exp(log_big(combinatorial) - log_big(denominator) + log_weight);
      total.add(sign_negative ? -magnitude : magnitude);
      return;
    }
    const int l = allowed[idx];
    if (idx + 1 == allowed.size()) {
      if (remaining % l != 0) return;
      k[idx] = remaining / l;
      walk(idx + 1, 0);
      k[idx] = 0;
      return;
    }
    for (std::int64_t kl = 0; kl * l <= remaining; ++kl) {
      k[idx] = kl;
      walk(idx + 1, remaining - kl * l);
    }
    k[idx] = 0;
  };
  walk(0, big_n);
  return total.value();
}

}  // namespace countprob
