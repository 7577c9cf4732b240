#pragma once

#include "countprob/model.hpp"
#include "countprob/montecarlo.hpp"

namespace countprob {

/// Mixture with 1..max_atoms atoms, p uniform on [0,1], Dirichlet(1) weights.
MixtureSpec random_mixture(CountRng& rng, int max_atoms = 3);

/// Coefficients with l_max uniform in [1, max_l], each C_l uniform in
/// [-bound, bound]; no admissibility guarantee.
CorrelationModel random_model(CountRng& rng, int max_l, double bound);

/// A model whose limiting pmf is nonnegative. Draws C_1 in [0.5, 5] and
/// small higher orders, keeping the first draw whose limit pmf is admissible;
/// after 50 rejections it falls back to a compound-Poisson exponent
/// (nonnegative q[t] for t >= 1), which is always admissible.
CorrelationModel random_admissible_model(CountRng& rng, int max_l);

}  // namespace countprob
