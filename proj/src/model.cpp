#include "countprob/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "countprob/error.hpp"
#include "double_double.hpp"

namespace countprob {

double CorrelationModel::coefficient(int l) const {
  if (l < 1) throw Error(ErrorKind::OutOfRange, "coefficient order must be >= 1");
  if (l > l_max()) return 0.0;
  return c_[static_cast<std::size_t>(l - 1)];
}

CorrelationModel validate_model(const CorrelationModel& model) {
  if (model.c_.empty()) throw Error(ErrorKind::BadShape, "l_max must be >= 1");
  for (std::size_t i = 0; i < model.c_.size(); ++i) {
    if (!std::isfinite(model.c_[i])) {
      throw Error(ErrorKind::NonFinite, "C_" + std::to_string(i + 1) + " is not finite");
    }
  }
  if (model.n_ && *model.n_ < model.l_max()) {
    throw Error(ErrorKind::BadShape, "n=" + std::to_string(*model.n_) + " is smaller than l_max=" +
                                         std::to_string(model.l_max()));
  }
  CorrelationModel out = model;
  out.validated_ = true;
  out.warnings_.clear();
  if (out.l_max() > 1 && out.c_.back() == 0.0) out.warnings_.emplace_back("C_{l_max}=0");
  return out;
}

SymmetricTable::SymmetricTable(int order, TableKind kind, std::vector<double> values, NoCheck)
    : order_(order), kind_(kind), values_(std::move(values)) {
  if (order_ < 1) throw Error(ErrorKind::OutOfRange, "table order must be >= 1");
  if (values_.size() != static_cast<std::size_t>(order_) + 1) {
    throw Error(ErrorKind::BadShape, "table of order " + std::to_string(order_) + " needs " +
                                         std::to_string(order_ + 1) + " values");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "table value is not finite");
  }
}

SymmetricTable::SymmetricTable(int order, TableKind kind, std::vector<double> values)
    : SymmetricTable(order, kind, std::move(values), NoCheck{}) {
  if (kind_ != TableKind::probability) return;
  for (double v : values_) {
    if (v < -kNormalizationTolerance) throw Error(ErrorKind::BadSpec, "negative probability in table");
  }
  if (std::abs(total_mass() - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorKind::BadSpec, "probability table is not normalized");
  }
}

SymmetricTable SymmetricTable::unchecked(int order, TableKind kind, std::vector<double> values) {
  return SymmetricTable(order, kind, std::move(values), NoCheck{});
}

double SymmetricTable::at_pattern(std::uint32_t pattern) const {
  if (order_ < 32 && (pattern >> order_) != 0) throw Error(ErrorKind::OutOfRange, "pattern has too many bits");
  return values_[static_cast<std::size_t>(std::popcount(pattern))];
}

std::vector<double> SymmetricTable::expanded() const {
  if (order_ > kMaxExpandedOrder) throw Error(ErrorKind::OutOfRange, "expanded view limited to order 12");
  std::vector<double> out(std::size_t{1} << order_);
  for (std::uint32_t p = 0; p < out.size(); ++p) out[p] = values_[static_cast<std::size_t>(std::popcount(p))];
  return out;
}

double SymmetricTable::total_mass() const {
  double total = 0.0;
  for (int m = 0; m <= order_; ++m) total += binomial(order_, m) * values_[static_cast<std::size_t>(m)];
  return total;
}

ExchangeableJoint::ExchangeableJoint(int n, std::vector<double> pattern_weight)
    : n_(n), weight_(std::move(pattern_weight)) {
  if (n_ < 1) throw Error(ErrorKind::BadShape, "joint needs n >= 1");
  if (weight_.size() != static_cast<std::size_t>(n_) + 1) throw Error(ErrorKind::BadShape, "joint needs n+1 weights");
  double total = 0.0;
  for (int m = 0; m <= n_; ++m) {
    const double w = weight_[static_cast<std::size_t>(m)];
    if (!std::isfinite(w)) throw Error(ErrorKind::NonFinite, "pattern weight is not finite");
    if (w < 0.0) throw Error(ErrorKind::BadSpec, "negative pattern weight");
    total += binomial(n_, m) * w;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) throw Error(ErrorKind::BadSpec, "joint is not normalized");
}

bool Pmf::admissible() const noexcept {
  return std::none_of(values.begin(), values.end(), [](double p) { return p < -kAdmissibilityTolerance; });
}

std::optional<std::pair<std::size_t, double>> Pmf::most_negative() const {
  auto it = std::min_element(values.begin(), values.end());
  if (it == values.end() || *it >= 0.0) return std::nullopt;
  return std::pair{static_cast<std::size_t>(it - values.begin()), *it};
}

// Both sums run in double-double so that only the stored entries, not the
// summation, limit the result.
double Pmf::total() const {
  kernels::DoubleDouble total;
  for (double p : values) total = detail::dd_add(total, {p, 0.0});
  return total.hi + total.lo;
}

double Pmf::mean() const {
  kernels::DoubleDouble m;
  for (std::size_t s = 0; s < values.size(); ++s) {
    m = detail::dd_add(m, detail::dd_mul({static_cast<double>(s), 0.0}, {values[s], 0.0}));
  }
  return m.hi + m.lo;
}

double reduced_correlation(const CorrelationModel& model, int k, int q) {
  if (!model.n()) throw Error(ErrorKind::BadShape, "reduced correlation needs n");
  if (k < 2 || k > model.l_max()) throw Error(ErrorKind::OutOfRange, "k must lie in [2, l_max]");
  if (q < 0 || q > k) throw Error(ErrorKind::OutOfRange, "q must lie in [0, k]");
  const double value = model.coefficient(k) / std::pow(static_cast<double>(*model.n()), k);
  return (q % 2 == 0) ? value : -value;
}

SymmetricTable reduced_correlation_table(const CorrelationModel& model, int k) {
  if (!model.n()) throw Error(ErrorKind::BadShape, "reduced correlation needs n");
  if (k < 1 || k > *model.n()) throw Error(ErrorKind::OutOfRange, "k must lie in [1, n]");
  const double n = static_cast<double>(*model.n());
  std::vector<double> values(static_cast<std::size_t>(k) + 1);
  if (k == 1) {
    values[1] = model.coefficient(1) / n;
    values[0] = 1.0 - values[1];
  } else if (k <= model.l_max()) {
    for (int m = 0; m <= k; ++m) values[static_cast<std::size_t>(m)] = reduced_correlation(model, k, k - m);
  }
  return SymmetricTable::unchecked(k, TableKind::correlation, std::move(values));
}

double correlation_coefficient(const SymmetricTable& table, std::int64_t n) {
  if (table.order() > n) throw Error(ErrorKind::OutOfRange, "table order exceeds n");
  return std::pow(static_cast<double>(n), table.order()) * table.value(table.order());
}

BigInt m_factor(std::int64_t n, std::int64_t l, std::int64_t k) {
  if (l < 0 || k < 0 || n < l * k) throw Error(ErrorKind::OutOfRange, "m_factor needs n >= l*k >= 0");
  BigInt falling = 1;
  for (std::int64_t i = n - l * k + 1; i <= n; ++i) falling *= i;
  BigInt kfact = 1;
  for (std::int64_t i = 2; i <= k; ++i) kfact *= i;
  return falling / kfact;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace countprob
