#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace countprob {

using BigInt = boost::multiprecision::cpp_int;

/// Probabilities below -kAdmissibilityTolerance mark a model as inadmissible.
inline constexpr double kAdmissibilityTolerance = 1e-9;

/// Tolerance for normalization checks on probability tables and joints.
inline constexpr double kNormalizationTolerance = 1e-12;

/// Largest order for which the 2^k expanded per-pattern view is materialized.
inline constexpr int kMaxExpandedOrder = 12;

/// Correlation coefficients C_1..C_lmax of an exchangeable family, with an
/// optional event count N. Coefficients are addressed 1-based.
class CorrelationModel {
 public:
  CorrelationModel() = default;
  CorrelationModel(std::vector<double> coefficients, std::optional<std::int64_t> n = std::nullopt)
      : c_(std::move(coefficients)), n_(n) {}

  int l_max() const noexcept { return static_cast<int>(c_.size()); }
  /// C_l for 1 <= l <= l_max; zero for l > l_max.
  double coefficient(int l) const;
  std::span<const double> coefficients() const noexcept { return c_; }

  const std::optional<std::int64_t>& n() const noexcept { return n_; }
  CorrelationModel with_n(std::optional<std::int64_t> n) const { return {c_, n}; }

  bool validated() const noexcept { return validated_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend CorrelationModel validate_model(const CorrelationModel& model);

  std::vector<double> c_;
  std::optional<std::int64_t> n_;
  bool validated_ = false;
  std::vector<std::string> warnings_;
};

/// Checks shape and finiteness. Returns a copy flagged as validated; a zero
/// highest-order coefficient is accepted with the warning "C_{l_max}=0".
CorrelationModel validate_model(const CorrelationModel& model);

enum class TableKind { probability, correlation };

/// A symmetric function on {0,1}^k stored by number of ones m = 0..k.
class SymmetricTable {
 public:
  /// Probability tables are checked for non-negativity and normalization.
  SymmetricTable(int order, TableKind kind, std::vector<double> values);

  /// Skips the probability checks (used for reconstructions from formal inputs).
  static SymmetricTable unchecked(int order, TableKind kind, std::vector<double> values);

  int order() const noexcept { return order_; }
  TableKind kind() const noexcept { return kind_; }
  std::span<const double> values() const noexcept { return values_; }
  double value(int ones) const { return values_.at(static_cast<std::size_t>(ones)); }

  /// Value at the pattern whose bit i holds r_{i+1}.
  double at_pattern(std::uint32_t pattern) const;

  /// All 2^k pattern values, index = pattern bits; order <= kMaxExpandedOrder.
  std::vector<double> expanded() const;

  /// Σ_m binom(k,m) values[m].
  double total_mass() const;

 private:
  struct NoCheck {};
  SymmetricTable(int order, TableKind kind, std::vector<double> values, NoCheck);

  int order_;
  TableKind kind_;
  std::vector<double> values_;
};

/// Joint law of N exchangeable binary events; pattern_weight[m] is the
/// probability of any single outcome pattern with exactly m ones.
class ExchangeableJoint {
 public:
  ExchangeableJoint(int n, std::vector<double> pattern_weight);

  int n() const noexcept { return n_; }
  std::span<const double> pattern_weight() const noexcept { return weight_; }

 private:
  int n_;
  std::vector<double> weight_;
};

/// Count distribution p(0..s_max) with a bound on the mass beyond s_max.
struct Pmf {
  std::vector<double> values;
  double tail_bound = 0.0;
  /// Estimated absolute rounding error per entry (0 when exact to double precision).
  double error_estimate = 0.0;

  bool admissible() const noexcept;
  /// (s, p(s)) for the most negative entry, or nullopt if all are >= 0.
  std::optional<std::pair<std::size_t, double>> most_negative() const;
  double total() const;
  double mean() const;
};

struct CfGrid {
  std::vector<double> u;
  std::vector<std::complex<double>> chi;
};

/// (-1)^q C_k / N^k: the value of G_k at any pattern with q zeros, k >= 2.
double reduced_correlation(const CorrelationModel& model, int k, int q);

/// The compressed correlation table of order k implied by (C, N), k >= 1.
SymmetricTable reduced_correlation_table(const CorrelationModel& model, int k);

/// N^order times the all-ones entry of a correlation table.
double correlation_coefficient(const SymmetricTable& table, std::int64_t n);

/// Number of ways to choose l ordered k-plets from n elements, with the
/// k-plets themselves unordered: n! / (n - l k)! / k!.
BigInt m_factor(std::int64_t n, std::int64_t l, std::int64_t k);

double binomial(int n, int k);
double factorial(int n);

}  // namespace countprob
