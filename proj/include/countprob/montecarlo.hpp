#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "countprob/model.hpp"

namespace countprob {

inline constexpr int kDefaultBootstrap = 200;
inline constexpr int kMaxEstimateOrder = 4;

struct MixtureAtom {
  double p = 0.0;
  double weight = 0.0;
};

/// A de Finetti mixture of iid Bernoulli(p) sequences.
struct MixtureSpec {
  std::vector<MixtureAtom> atoms;

  /// Throws BadSpec unless each p is in [0,1], weights are >= 0 and sum to 1.
  void validate() const;
};

struct EstimateReport {
  std::vector<double> c_hat;
  std::vector<double> std_err;
  std::int64_t n_samples = 0;
  int n_bootstrap = 0;
};

/// pattern_weight[m] = Σ weight p^m (1-p)^(n-m).
ExchangeableJoint build_mixture_joint(const MixtureSpec& spec, int n);

/// The frozen generator: std::mt19937_64 (fully specified by the standard)
/// with doubles built from the top 53 bits and bounded integers from the
/// high half of a 128-bit product. Identical seeds give identical streams on
/// every conforming platform.
class CountRng {
 public:
  explicit CountRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on {0, ..., bound - 1}; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF draws from an admissible pmf. Entries in [-1e-9, 0) count as
/// zero; uniforms landing in the tail mass map to the last support point.
std::vector<std::int64_t> sample_counts(const Pmf& pmf, std::int64_t n_samples, std::uint64_t seed);

/// Plug-in factorial-cumulant estimates of C_1..C_l_max (l_max <= 4) with
/// bootstrap standard errors. Needs at least 10^l_max samples.
EstimateReport estimate_coefficients(std::span<const std::int64_t> counts, int l_max,
                                     int n_bootstrap = kDefaultBootstrap, std::uint64_t seed = 0);

}  // namespace countprob
