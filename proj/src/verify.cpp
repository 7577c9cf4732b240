#include "countprob/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "countprob/count_finite.hpp"
#include "countprob/count_limit.hpp"
#include "countprob/error.hpp"
#include "countprob/random_models.hpp"
#include "countprob/ursell.hpp"

namespace countprob {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct Tracker {
  IdentityCheck check;
  void observe(double deviation) {
    ++check.cases;
    // NaN must register as a failure.
    if (!(deviation <= check.worst)) check.worst = std::isnan(deviation) ? INFINITY : deviation;
  }
};

std::uint32_t permute_bits(std::uint32_t pattern, const std::vector<int>& perm) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) out |= ((pattern >> i) & 1u) << perm[i];
  return out;
}

double poisson_pmf(double lambda, int s) { return std::exp(-lambda + s * std::log(lambda) - std::lgamma(s + 1.0)); }

}  // namespace

std::vector<IdentityCheck> run_verify(const VerifyOptions& options) {
  if (options.n < 2 || options.n > 8) throw Error(ErrorKind::OutOfRange, "verify needs 2 <= n <= 8");
  if (options.trials < 1) throw Error(ErrorKind::OutOfRange, "verify needs trials >= 1");

  Tracker recursive_vs_partition{{"recursive_vs_partition_G", 0, 1e-12}};
  Tracker symmetry{{"permutation_symmetry_G", 0, 1e-12}};
  Tracker flip{{"flip_antisymmetry_G", 0, 1e-12}};
  Tracker round_trip{{"P_G_round_trip", 0, 1e-12}};
  Tracker iid{{"iid_correlation_free", 0, 1e-10}};
  Tracker oracle{{"oracle_vs_finite_pmf", 0, 1e-10}};
  Tracker normalization{{"finite_normalization", 0, 1e-9}};
  Tracker mean{{"finite_mean_identity", 0, 1e-8}};
  Tracker poisson{{"poisson_reduction", 0, 1e-12}};
  Tracker duality{{"cf_pmf_duality", 0, 1e-8}};
  Tracker cumulants{{"factorial_cumulant_round_trip", 0, 1e-8}};

  CountRng rng(options.seed);
  const int n = options.n;
  const std::int64_t sizes[] = {10, 100, 1000};

  std::vector<double> u_grid(32);
  for (int j = 0; j < 32; ++j) u_grid[j] = 2.0 * kPi * j / 32.0;

  for (int trial = 0; trial < options.trials; ++trial) {
    // Ursell identities on a random mixture joint.
    const auto joint = build_mixture_joint(random_mixture(rng), n);
    std::vector<SymmetricTable> p_tables;
    for (int k = 1; k <= n; ++k) p_tables.push_back(marginalize(joint, k));
    const auto g_rec = correlation_recursive_expanded(p_tables);
    const auto g_part = correlation_partition_all(p_tables);
    for (int k = 1; k <= n; ++k) {
      const auto& expanded = g_rec[k - 1];
      for (std::uint32_t r = 0; r < expanded.values.size(); ++r) {
        recursive_vs_partition.observe(std::abs(expanded.at(r) - g_part[k - 1].at_pattern(r)));
        if (k >= 2 && (r & 1u) == 0) flip.observe(std::abs(expanded.at(r | 1u) + expanded.at(r)));
      }
      if (k <= 6) {
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
          for (std::uint32_t r = 0; r < expanded.values.size(); ++r) {
            symmetry.observe(std::abs(expanded.at(permute_bits(r, perm)) - expanded.at(r)));
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      const auto rebuilt = probability_from_correlations(std::span(g_part).first(k));
      for (int m = 0; m <= k; ++m) round_trip.observe(std::abs(rebuilt.value(m) - p_tables[k - 1].value(m)));
    }

    const auto measured = measure_coefficients(joint);
    const auto exact = count_pmf_from_joint(joint);
    const auto series = finite_count_pmf(measured);
    for (int s = 0; s <= n; ++s) oracle.observe(std::abs(series.values[s] - exact.values[s]));

    MixtureSpec single{{{rng.uniform(), 1.0}}};
    const auto iid_model = measure_coefficients(build_mixture_joint(single, n));
    for (int k = 2; k <= n; ++k) iid.observe(std::abs(iid_model.coefficient(k)));

    // Count identities on random coefficient vectors.
    const auto model = random_model(rng, 4, 5.0).with_n(sizes[trial % 3]);
    const auto finite = finite_count_pmf(model);
    normalization.observe(std::abs(finite.total() - 1.0));
    mean.observe(std::abs(finite.mean() - model.coefficient(1)));

    const double lambda = 0.1 + 9.9 * rng.uniform();
    const auto pois = limit_pmf(CorrelationModel({lambda}));
    for (int s = 0; s <= 40; ++s) {
      const double got = s < static_cast<int>(pois.values.size()) ? pois.values[s] : 0.0;
      poisson.observe(std::abs(got - poisson_pmf(lambda, s)));
    }

    const auto admissible = random_admissible_model(rng, 4);
    const auto limit = limit_pmf(admissible);
    const auto from_pmf = pmf_fourier(limit, u_grid);
    const auto from_cf = char_fn(admissible, u_grid);
    for (std::size_t j = 0; j < u_grid.size(); ++j) duality.observe(std::abs(from_pmf.chi[j] - from_cf.chi[j]));
    const auto recovered = factorial_cumulants_from_pmf(limit, admissible.l_max());
    for (int l = 1; l <= admissible.l_max(); ++l) cumulants.observe(std::abs(recovered[l - 1] - admissible.coefficient(l)));
  }

  return {recursive_vs_partition.check, symmetry.check, flip.check,      round_trip.check,
          iid.check,                    oracle.check,   normalization.check, mean.check,
          poisson.check,                duality.check,  cumulants.check};
}

}  // namespace countprob
