#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's numerical routines.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

inline double poisson(double lambda, int s) {
  if (lambda == 0.0) return s == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + s * std::log(lambda) - std::lgamma(s + 1.0));
}

inline double binomial_pmf(int n, double p, int s) {
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
  if (p == 0.0) return s == 0 ? 1.0 : 0.0;
  if (p == 1.0) return s == n ? 1.0 : 0.0;
  return std::exp(log_choose + s * std::log(p) + (n - s) * std::log1p(-p));
}

// Bell numbers by B_{n+1} = Σ_k binom(n,k) B_k.
inline std::vector<std::uint64_t> bell_numbers(int up_to) {
  std::vector<std::uint64_t> bell{1};
  for (int n = 0; n < up_to; ++n) {
    std::uint64_t next = 0;
    std::uint64_t choose = 1;
    for (int k = 0; k <= n; ++k) {
      next += choose * bell[k];
      choose = choose * (n - k) / (k + 1);
    }
    bell.push_back(next);
  }
  return bell;
}

inline boost::multiprecision::cpp_int big_binomial(std::int64_t n, std::int64_t k) {
  boost::multiprecision::cpp_int out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

// binom(n, lk) * Π_{j<l} binom((l-j)k, k) * (k!)^l / k!
inline boost::multiprecision::cpp_int m_factor_product_form(std::int64_t n, std::int64_t l, std::int64_t k) {
  boost::multiprecision::cpp_int out = big_binomial(n, l * k);
  for (std::int64_t j = 0; j < l; ++j) out *= big_binomial((l - j) * k, k);
  boost::multiprecision::cpp_int kfact = 1;
  for (std::int64_t i = 2; i <= k; ++i) kfact *= i;
  for (std::int64_t j = 0; j < l; ++j) out *= kfact;
  return out / kfact;
}

struct Atom {
  double p;
  double w;
};

// p(s) = Σ_atoms w binom(N,s) p^s (1-p)^(N-s), summed in long double.
inline std::vector<double> mixture_count_pmf(const std::vector<Atom>& atoms, int n) {
  std::vector<double> out(n + 1);
  for (int s = 0; s <= n; ++s) {
    long double acc = 0;
    long double choose = 1;
    for (int i = 1; i <= s; ++i) choose = choose * (n - s + i) / i;
    for (const auto& a : atoms) {
      acc += a.w * choose * std::pow(static_cast<long double>(a.p), s) *
             std::pow(1.0L - a.p, n - s);
    }
    out[s] = static_cast<double>(acc);
  }
  return out;
}

// Discrete inverse Fourier transform of chi sampled at u_j = 2 pi j / m.
// Exact for a pmf supported on [0, m) and aliased by the mass beyond.
template <typename Chi>
std::vector<double> invert_characteristic(Chi chi, int m, int s_max) {
  std::vector<std::complex<double>> samples(m);
  for (int j = 0; j < m; ++j) samples[j] = chi(2.0 * kPi * j / m);
  std::vector<double> out(s_max + 1);
  for (int s = 0; s <= s_max; ++s) {
    std::complex<long double> acc = 0;
    for (int j = 0; j < m; ++j) {
      const long double angle = -2.0L * kPi * static_cast<long double>((static_cast<std::int64_t>(j) * s) % m) / m;
      acc += std::complex<long double>(samples[j].real(), samples[j].imag()) *
             std::complex<long double>(std::cos(angle), std::sin(angle));
    }
    out[s] = static_cast<double>(acc.real() / m);
  }
  return out;
}

// Cumulants c_1..c_n of a sequence f_r = E[(s)_r] via the series
// log(1 + Σ f_r w^r / r!) = Σ c_r w^r / r!, using the power-series log
// recurrence on ordinary coefficients.
inline std::vector<double> factorial_cumulants_by_series_log(const std::vector<double>& moments) {
  const int n = static_cast<int>(moments.size());
  std::vector<double> a(n + 1, 0.0);  // ordinary coefficients of 1 + Σ f_r w^r / r!
  a[0] = 1.0;
  double fact = 1.0;
  for (int r = 1; r <= n; ++r) {
    fact *= r;
    a[r] = moments[r - 1] / fact;
  }
  std::vector<double> b(n + 1, 0.0);  // log series
  for (int r = 1; r <= n; ++r) {
    double acc = r * a[r];
    for (int j = 1; j < r; ++j) acc -= j * b[j] * a[r - j];
    b[r] = acc / r;
  }
  std::vector<double> c(n);
  fact = 1.0;
  for (int r = 1; r <= n; ++r) {
    fact *= r;
    c[r - 1] = b[r] * fact;
  }
  return c;
}

}  // namespace oracle
