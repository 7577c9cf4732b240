#pragma once

#include <span>
#include <vector>

#include "countprob/model.hpp"

namespace countprob {

/// Cap on the support explored by limit_pmf before giving up.
inline constexpr std::size_t kMaxLimitSupport = 1'000'000;
/// Highest factorial-cumulant order computed from a pmf.
inline constexpr int kMaxCumulantOrder = 6;
/// Largest tail mass tolerated by factorial_cumulants_from_pmf.
inline constexpr double kMaxCumulantTail = 1e-10;

/// Q(z) = Σ_t q[t] z^t, the exponent of the limiting probability generating
/// function exp(Q(z)); the characteristic function is exp(Q(e^{iu})).
struct ExponentPolynomial {
  std::vector<double> q;

  double at_one() const;
};

/// q[t] = Σ_{l>=t} (-1)^(l-t) C_l / l! binom(l, t). Also expands
/// Σ_l C_l (z-1)^l / l! by repeated multiplication and throws Internal if
/// the two forms disagree by more than 1e-14 * max(1, max_l 2^l |C_l| / l!).
ExponentPolynomial exponent_polynomial(const CorrelationModel& model);

/// Same coefficients from the (z-1)^l expansion only.
ExponentPolynomial exponent_polynomial_binomial_form(const CorrelationModel& model);

/// chi(u) = exp(Q(e^{iu})) on the given grid.
CfGrid char_fn(const CorrelationModel& model, std::span<const double> u_grid);

/// Coefficients of exp(Q(z)) by the recurrence
///   p(0) = exp(q[0]),  n p(n) = Σ_{j=1}^{min(n, l_max)} j q[j] p(n-j),
/// extended until |1 - Σ p| <= mass_tolerance. The support starts at
/// ceil(C_1 + 10 sqrt(max(C_1 + C_2, 1))) and doubles as needed up to
/// kMaxLimitSupport (NonConvergent beyond). Intermediate values are
/// rescaled so large C_1 neither underflows p(0) nor overflows later terms.
Pmf limit_pmf(const CorrelationModel& model, double mass_tolerance = 1e-12);

/// Σ_s p(s) e^{ius} evaluated on a grid (the pmf-side characteristic function).
CfGrid pmf_fourier(const Pmf& pmf, std::span<const double> u_grid);

/// f_r = Σ_s s(s-1)...(s-r+1) p(s) for r = 1..order.
std::vector<double> factorial_moments(const Pmf& pmf, int order);

/// Moment-to-cumulant map f_n = Σ_{m=1}^{n} binom(n-1, m-1) c_m f_{n-m}, f_0 = 1.
std::vector<double> cumulants_from_moments(std::span<const double> moments);

/// Factorial cumulants c_1..c_l_max of a pmf. For the limiting law these
/// are exactly C_1..C_l_max.
std::vector<double> factorial_cumulants_from_pmf(const Pmf& pmf, int l_max);

}  // namespace countprob
