#include "countprob/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "countprob/count_limit.hpp"
#include "countprob/error.hpp"
#include "summation.hpp"

namespace countprob {
namespace {

std::vector<double> cumulants_of_histogram(std::span<const std::int64_t> hist, std::int64_t n, int order) {
  Pmf empirical;
  empirical.values.resize(hist.size());
  for (std::size_t s = 0; s < hist.size(); ++s) empirical.values[s] = static_cast<double>(hist[s]) / static_cast<double>(n);
  return cumulants_from_moments(factorial_moments(empirical, order));
}

}  // namespace

void MixtureSpec::validate() const {
  if (atoms.empty()) throw Error(ErrorKind::BadSpec, "mixture needs at least one atom");
  double total = 0.0;
  for (const auto& atom : atoms) {
    if (!(atom.p >= 0.0 && atom.p <= 1.0)) throw Error(ErrorKind::BadSpec, "atom probability outside [0,1]");
    if (!(atom.weight >= 0.0) || !std::isfinite(atom.weight)) throw Error(ErrorKind::BadSpec, "negative atom weight");
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::BadSpec, "atom weights must sum to 1");
}

ExchangeableJoint build_mixture_joint(const MixtureSpec& spec, int n) {
  spec.validate();
  if (n < 1) throw Error(ErrorKind::BadSpec, "mixture joint needs n >= 1");
  std::vector<double> weight(n + 1, 0.0);
  for (int m = 0; m <= n; ++m) {
    for (const auto& atom : spec.atoms) {
      weight[m] += atom.weight * std::pow(atom.p, m) * std::pow(1.0 - atom.p, n - m);
    }
  }
  return ExchangeableJoint(n, std::move(weight));
}

std::vector<std::int64_t> sample_counts(const Pmf& pmf, std::int64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorKind::OutOfRange, "n_samples must be >= 1");
  if (pmf.values.empty()) throw Error(ErrorKind::BadShape, "empty pmf");
  if (!pmf.admissible()) {
    const auto worst = pmf.most_negative();
    throw Error(ErrorKind::InadmissiblePmf, "p(" + std::to_string(worst->first) + ") = " + std::to_string(worst->second));
  }
  std::vector<double> cdf(pmf.values.size());
  detail::CompensatedSum running;
  for (std::size_t s = 0; s < cdf.size(); ++s) {
    running.add(std::max(pmf.values[s], 0.0));
    cdf[s] = running.value();
  }
  CountRng rng(seed);
  std::vector<std::int64_t> out(static_cast<std::size_t>(n_samples));
  const auto last = static_cast<std::int64_t>(cdf.size() - 1);
  for (auto& draw : out) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    draw = std::min(static_cast<std::int64_t>(it - cdf.begin()), last);
  }
  return out;
}

EstimateReport estimate_coefficients(std::span<const std::int64_t> counts, int l_max, int n_bootstrap,
                                     std::uint64_t seed) {
  if (l_max < 1 || l_max > kMaxEstimateOrder) throw Error(ErrorKind::OutOfRange, "l_max must lie in [1, 4]");
  if (n_bootstrap < 2) throw Error(ErrorKind::OutOfRange, "n_bootstrap must be >= 2");
  const auto n = static_cast<std::int64_t>(counts.size());
  const auto floor = static_cast<std::int64_t>(std::pow(10.0, l_max));
  if (n < floor) {
    throw Error(ErrorKind::TooFewSamples,
                std::to_string(n) + " samples; l_max=" + std::to_string(l_max) + " needs " + std::to_string(floor));
  }
  std::int64_t max_count = 0;
  for (auto c : counts) {
    if (c < 0) throw Error(ErrorKind::BadInput, "counts must be nonnegative");
    max_count = std::max(max_count, c);
  }

  std::vector<std::int64_t> hist(static_cast<std::size_t>(max_count) + 1, 0);
  for (auto c : counts) ++hist[static_cast<std::size_t>(c)];

  EstimateReport report;
  report.c_hat = cumulants_of_histogram(hist, n, l_max);
  report.n_samples = n;
  report.n_bootstrap = n_bootstrap;

  // Resampling stream derived from the user seed.
  std::seed_seq derived{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0xB0075u};
  std::uint64_t boot_seed = 0;
  {
    std::uint32_t words[2];
    derived.generate(words, words + 2);
    boot_seed = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  }
  CountRng rng(boot_seed);

  std::vector<std::vector<double>> replicates(l_max, std::vector<double>(n_bootstrap));
  std::vector<std::int64_t> boot_hist(hist.size());
  for (int b = 0; b < n_bootstrap; ++b) {
    std::fill(boot_hist.begin(), boot_hist.end(), 0);
    for (std::int64_t i = 0; i < n; ++i) ++boot_hist[counts[rng.below(static_cast<std::uint64_t>(n))]];
    const auto c = cumulants_of_histogram(boot_hist, n, l_max);
    for (int l = 0; l < l_max; ++l) replicates[l][b] = c[l];
  }
  report.std_err.resize(l_max);
  for (int l = 0; l < l_max; ++l) {
    detail::CompensatedSum sum;
    for (double v : replicates[l]) sum.add(v);
    const double mean = sum.value() / n_bootstrap;
    detail::CompensatedSum sq;
    for (double v : replicates[l]) sq.add((v - mean) * (v - mean));
    report.std_err[l] = std::sqrt(sq.value() / (n_bootstrap - 1));
  }
  return report;
}

}  // namespace countprob
