#include "countprob/count_limit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "countprob/error.hpp"
#include "countprob/kernels.hpp"
#include "summation.hpp"

namespace countprob {
namespace {

// Largest magnitude kept in the unscaled recurrence before rescaling.
constexpr double kRescaleThreshold = 1e200;
// Relative size below which a pmf term no longer affects any moment we compute.
constexpr double kNegligible = 1e-30;

void fill_unit_circle(std::span<const double> u, std::vector<double>& re, std::vector<double>& im) {
  re.resize(u.size());
  im.resize(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    re[j] = std::cos(u[j]);
    im[j] = std::sin(u[j]);
  }
}

}  // namespace

double ExponentPolynomial::at_one() const {
  detail::CompensatedSum sum;
  for (double v : q) sum.add(v);
  return sum.value();
}

ExponentPolynomial exponent_polynomial_binomial_form(const CorrelationModel& model) {
  const auto valid = validate_model(model);
  const int l_max = valid.l_max();
  std::vector<double> q(l_max + 1, 0.0);
  std::vector<double> power{1.0};  // (z - 1)^l
  for (int l = 1; l <= l_max; ++l) {
    std::vector<double> next(power.size() + 1, 0.0);
    for (std::size_t t = 0; t < power.size(); ++t) {
      next[t + 1] += power[t];
      next[t] -= power[t];
    }
    power = std::move(next);
    const double scale = valid.coefficient(l) / factorial(l);
    for (std::size_t t = 0; t < power.size(); ++t) q[t] += scale * power[t];
  }
  return {std::move(q)};
}

ExponentPolynomial exponent_polynomial(const CorrelationModel& model) {
  const auto valid = validate_model(model);
  const int l_max = valid.l_max();
  std::vector<double> q(l_max + 1, 0.0);
  double magnitude = 1.0;
  for (int l = 1; l <= l_max; ++l) {
    const double scale = valid.coefficient(l) / factorial(l);
    magnitude = std::max(magnitude, std::abs(scale) * std::pow(2.0, l));
    for (int t = 0; t <= l; ++t) {
      const double sign = ((l - t) % 2 == 0) ? 1.0 : -1.0;
      q[t] += sign * scale * binomial(l, t);
    }
  }
  const auto check = exponent_polynomial_binomial_form(valid);
  for (int t = 0; t <= l_max; ++t) {
    if (std::abs(q[t] - check.q[t]) > 1e-14 * magnitude) {
      throw Error(ErrorKind::Internal, "exponent forms disagree at t=" + std::to_string(t));
    }
  }
  return {std::move(q)};
}

CfGrid char_fn(const CorrelationModel& model, std::span<const double> u_grid) {
  const auto exponent = exponent_polynomial(model);
  std::vector<double> z_re, z_im;
  fill_unit_circle(u_grid, z_re, z_im);
  std::vector<double> q_re(u_grid.size()), q_im(u_grid.size());
  kernels::horner_complex(exponent.q, z_re, z_im, q_re, q_im);

  CfGrid out;
  out.u.assign(u_grid.begin(), u_grid.end());
  out.chi.resize(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j) out.chi[j] = std::exp(std::complex<double>(q_re[j], q_im[j]));
  return out;
}

Pmf limit_pmf(const CorrelationModel& model, double mass_tolerance) {
  if (!(mass_tolerance > 0.0 && mass_tolerance <= 1e-6)) {
    throw Error(ErrorKind::OutOfRange, "mass tolerance must lie in (0, 1e-6]");
  }
  const auto valid = validate_model(model);
  const auto exponent = exponent_polynomial(valid);
  const int l_max = valid.l_max();

  std::vector<double> weighted(l_max + 1);  // j q[j]
  for (int j = 1; j <= l_max; ++j) weighted[j] = j * exponent.q[j];

  const double c1 = valid.coefficient(1);
  const double spread = std::max(c1 + valid.coefficient(2), 1.0);
  std::size_t s_max = static_cast<std::size_t>(
      std::min(static_cast<double>(kMaxLimitSupport), std::max(1.0, std::ceil(c1 + 10.0 * std::sqrt(spread)))));

  // p(s) = r[s] * exp(log_scale); r[0] starts at 1.
  std::vector<double> r{1.0};
  double log_scale = exponent.q[0];
  detail::CompensatedSum scaled_mass;
  scaled_mass.add(1.0);

  auto mass = [&] { return scaled_mass.value() * std::exp(log_scale); };
  // The last l_max terms (which seed every later one) are below rounding
  // relative to the peak, so higher factorial moments see no truncation.
  auto decayed = [&] {
    double peak = 0.0;
    for (double v : r) peak = std::max(peak, std::abs(v));
    const std::size_t seeds = std::min(r.size(), static_cast<std::size_t>(l_max));
    for (std::size_t i = r.size() - seeds; i < r.size(); ++i) {
      if (std::abs(r[i]) > kNegligible * peak) return false;
    }
    return true;
  };

  for (;;) {
    r.reserve(s_max + 1);
    for (std::size_t n = r.size(); n <= s_max; ++n) {
      double acc = 0.0;
      const std::size_t top = std::min<std::size_t>(n, static_cast<std::size_t>(l_max));
      for (std::size_t j = 1; j <= top; ++j) acc += weighted[j] * r[n - j];
      const double value = acc / static_cast<double>(n);
      r.push_back(value);
      scaled_mass.add(value);
      if (std::abs(value) > kRescaleThreshold) {
        const double factor = 1.0 / kRescaleThreshold;
        for (double& v : r) v *= factor;
        const double carried = scaled_mass.value() * factor;
        scaled_mass = detail::CompensatedSum{};
        scaled_mass.add(carried);
        log_scale += std::log(kRescaleThreshold);
      }
    }
    const double total = mass();
    if (std::isfinite(total) && std::abs(1.0 - total) <= mass_tolerance && decayed()) break;
    if (s_max >= kMaxLimitSupport) {
      throw Error(ErrorKind::NonConvergent, "mass tolerance not met within support " + std::to_string(s_max));
    }
    s_max = std::min(2 * s_max, kMaxLimitSupport);
  }

  double peak = 0.0;
  for (double v : r) peak = std::max(peak, std::abs(v));
  std::size_t keep = r.size();
  while (keep > 1 && std::abs(r[keep - 1]) <= kNegligible * peak) --keep;
  r.resize(keep);

  Pmf pmf;
  const double factor = std::exp(log_scale);
  pmf.values.resize(r.size());
  for (std::size_t s = 0; s < r.size(); ++s) pmf.values[s] = r[s] * factor;
  pmf.tail_bound = std::abs(1.0 - mass());
  return pmf;
}

CfGrid pmf_fourier(const Pmf& pmf, std::span<const double> u_grid) {
  std::vector<double> z_re, z_im;
  fill_unit_circle(u_grid, z_re, z_im);
  std::vector<double> re(u_grid.size()), im(u_grid.size());
  kernels::horner_complex(pmf.values, z_re, z_im, re, im);
  CfGrid out;
  out.u.assign(u_grid.begin(), u_grid.end());
  out.chi.resize(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j) out.chi[j] = {re[j], im[j]};
  return out;
}

std::vector<double> factorial_moments(const Pmf& pmf, int order) {
  std::vector<detail::CompensatedSum> sums(order + 1);
  for (std::size_t s = 0; s < pmf.values.size(); ++s) {
    double falling = 1.0;
    for (int r = 1; r <= order; ++r) {
      falling *= static_cast<double>(s) - (r - 1);
      if (falling == 0.0) break;
      sums[r].add(falling * pmf.values[s]);
    }
  }
  std::vector<double> f(order);
  for (int r = 1; r <= order; ++r) f[r - 1] = sums[r].value();
  return f;
}

std::vector<double> cumulants_from_moments(std::span<const double> moments) {
  const int order = static_cast<int>(moments.size());
  // f[0] = 1, f[n] = moments[n-1].
  std::vector<double> f(order + 1, 1.0);
  for (int n = 1; n <= order; ++n) f[n] = moments[n - 1];
  std::vector<double> c(order + 1, 0.0);
  for (int n = 1; n <= order; ++n) {
    double lower = 0.0;
    for (int m = 1; m < n; ++m) lower += binomial(n - 1, m - 1) * c[m] * f[n - m];
    c[n] = f[n] - lower;
  }
  return {c.begin() + 1, c.end()};
}

std::vector<double> factorial_cumulants_from_pmf(const Pmf& pmf, int l_max) {
  if (l_max < 1 || l_max > kMaxCumulantOrder) {
    throw Error(ErrorKind::OutOfRange, "cumulant order must lie in [1, 6]");
  }
  if (pmf.tail_bound > kMaxCumulantTail) {
    throw Error(ErrorKind::TailTooHeavy, "tail bound " + std::to_string(pmf.tail_bound) + " exceeds 1e-10");
  }
  return cumulants_from_moments(factorial_moments(pmf, l_max));
}

}  // namespace countprob
