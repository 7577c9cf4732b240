#pragma once

#include "countprob/kernels.hpp"

// Error-free transformations for double-double arithmetic (Dekker, Knuth).
// No FMA: results depend only on IEEE add/sub/mul, so vector code that
// repeats the same steps reproduces them bit for bit.
namespace countprob::detail {

inline void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  e = b - (s - a);
}

inline void split(double a, double& hi, double& lo) noexcept {
  const double t = 134217729.0 * a;  // 2^27 + 1
  hi = t - (t - a);
  lo = a - hi;
}

inline void two_prod(double a, double b, double& p, double& e) noexcept {
  p = a * b;
  double ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

inline kernels::DoubleDouble dd_mul(kernels::DoubleDouble a, kernels::DoubleDouble b) noexcept {
  double p, e;
  two_prod(a.hi, b.hi, p, e);
  e = e + (a.hi * b.lo + a.lo * b.hi);
  quick_two_sum(p, e, p, e);
  return {p, e};
}

inline kernels::DoubleDouble dd_add(kernels::DoubleDouble a, kernels::DoubleDouble b) noexcept {
  double s, e, t, f;
  two_sum(a.hi, b.hi, s, e);
  two_sum(a.lo, b.lo, t, f);
  e = e + t;
  quick_two_sum(s, e, s, e);
  e = e + f;
  quick_two_sum(s, e, s, e);
  return {s, e};
}

}  // namespace countprob::detail
