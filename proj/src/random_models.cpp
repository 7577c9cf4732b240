#include "countprob/random_models.hpp"

#include <cmath>

#include "countprob/count_limit.hpp"

namespace countprob {

MixtureSpec random_mixture(CountRng& rng, int max_atoms) {
  const int atoms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_atoms)));
  MixtureSpec spec;
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    const double p = rng.uniform();
    const double w = -std::log(1.0 - rng.uniform());
    spec.atoms.push_back({p, w});
    total += w;
  }
  for (auto& atom : spec.atoms) atom.weight /= total;
  // Absorb rounding so the weights sum to one within 1e-12.
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < spec.atoms.size(); ++i) rest -= spec.atoms[i].weight;
  spec.atoms.back().weight = rest;
  return spec;
}

CorrelationModel random_model(CountRng& rng, int max_l, double bound) {
  const int l_max = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_l)));
  std::vector<double> c(l_max);
  for (auto& v : c) v = bound * (2.0 * rng.uniform() - 1.0);
  return CorrelationModel(std::move(c));
}

CorrelationModel random_admissible_model(CountRng& rng, int max_l) {
  const int l_max = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_l)));
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<double> c(l_max);
    c[0] = 0.5 + 4.5 * rng.uniform();
    for (int l = 2; l <= l_max; ++l) c[l - 1] = 0.6 * c[0] * (2.0 * rng.uniform() - 1.0) / l;
    CorrelationModel model(std::move(c));
    if (limit_pmf(model).admissible()) return model;
  }
  // C_l = Q^{(l)}(1) for Q(z) = Σ_t q_t (z^t - 1) with q_t >= 0.
  std::vector<double> q(l_max + 1, 0.0);
  for (int t = 1; t <= l_max; ++t) q[t] = (t == 1 ? 1.0 : 0.3) * rng.uniform() + (t == 1 ? 0.5 : 0.0);
  std::vector<double> c(l_max, 0.0);
  for (int l = 1; l <= l_max; ++l) {
    for (int t = l; t <= l_max; ++t) c[l - 1] += q[t] * factorial(t) / factorial(t - l);
  }
  return CorrelationModel(std::move(c));
}

}  // namespace countprob
