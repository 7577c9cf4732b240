#include "countprob/kernels.hpp"

#include "double_double.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define COUNTPROB_HAVE_AVX2 1
#include <immintrin.h>
#endif

namespace countprob::kernels::avx2 {

#ifdef COUNTPROB_HAVE_AVX2

bool compiled() noexcept { return true; }

__attribute__((target("avx2"))) void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  const std::size_t n = x.size();
  const double* xp = x.data();
  double* yp = y.data();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(yp + i);
    __m256d y1 = _mm256_loadu_pd(yp + i + 4);
    y0 = _mm256_add_pd(y0, _mm256_mul_pd(va, _mm256_loadu_pd(xp + i)));
    y1 = _mm256_add_pd(y1, _mm256_mul_pd(va, _mm256_loadu_pd(xp + i + 4)));
    _mm256_storeu_pd(yp + i, y0);
    _mm256_storeu_pd(yp + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d y0 = _mm256_add_pd(_mm256_loadu_pd(yp + i), _mm256_mul_pd(va, _mm256_loadu_pd(xp + i)));
    _mm256_storeu_pd(yp + i, y0);
  }
  for (; i < n; ++i) yp[i] = yp[i] + a * xp[i];
}

namespace {

// Lane-wise copies of the scalar double-double steps, in the same order.
struct Pair {
  __m256d hi, lo;
};

__attribute__((target("avx2"))) inline Pair two_sum(__m256d a, __m256d b) {
  const __m256d s = _mm256_add_pd(a, b);
  const __m256d bb = _mm256_sub_pd(s, a);
  const __m256d e = _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, bb)), _mm256_sub_pd(b, bb));
  return {s, e};
}

__attribute__((target("avx2"))) inline Pair quick_two_sum(__m256d a, __m256d b) {
  const __m256d s = _mm256_add_pd(a, b);
  return {s, _mm256_sub_pd(b, _mm256_sub_pd(s, a))};
}

__attribute__((target("avx2"))) inline Pair split(__m256d a) {
  const __m256d t = _mm256_mul_pd(_mm256_set1_pd(134217729.0), a);
  const __m256d hi = _mm256_sub_pd(t, _mm256_sub_pd(t, a));
  return {hi, _mm256_sub_pd(a, hi)};
}

__attribute__((target("avx2"))) inline Pair two_prod(__m256d a, __m256d b) {
  const __m256d p = _mm256_mul_pd(a, b);
  const Pair as = split(a);
  const Pair bs = split(b);
  __m256d e = _mm256_sub_pd(_mm256_mul_pd(as.hi, bs.hi), p);
  e = _mm256_add_pd(e, _mm256_mul_pd(as.hi, bs.lo));
  e = _mm256_add_pd(e, _mm256_mul_pd(as.lo, bs.hi));
  e = _mm256_add_pd(e, _mm256_mul_pd(as.lo, bs.lo));
  return {p, e};
}

__attribute__((target("avx2"))) inline Pair dd_mul(Pair a, Pair b) {
  Pair r = two_prod(a.hi, b.hi);
  r.lo = _mm256_add_pd(r.lo, _mm256_add_pd(_mm256_mul_pd(a.hi, b.lo), _mm256_mul_pd(a.lo, b.hi)));
  return quick_two_sum(r.hi, r.lo);
}

__attribute__((target("avx2"))) inline Pair dd_add(Pair a, Pair b) {
  Pair s = two_sum(a.hi, b.hi);
  const Pair t = two_sum(a.lo, b.lo);
  s.lo = _mm256_add_pd(s.lo, t.hi);
  s = quick_two_sum(s.hi, s.lo);
  s.lo = _mm256_add_pd(s.lo, t.lo);
  return quick_two_sum(s.hi, s.lo);
}

}  // namespace

__attribute__((target("avx2"))) void axpy_dd(DoubleDouble a, std::span<const double> x_hi,
                                             std::span<const double> x_lo, std::span<double> y_hi,
                                             std::span<double> y_lo) noexcept {
  const std::size_t n = x_hi.size();
  const Pair va{_mm256_set1_pd(a.hi), _mm256_set1_pd(a.lo)};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const Pair x{_mm256_loadu_pd(x_hi.data() + i), _mm256_loadu_pd(x_lo.data() + i)};
    const Pair y{_mm256_loadu_pd(y_hi.data() + i), _mm256_loadu_pd(y_lo.data() + i)};
    const Pair r = dd_add(y, dd_mul(va, x));
    _mm256_storeu_pd(y_hi.data() + i, r.hi);
    _mm256_storeu_pd(y_lo.data() + i, r.lo);
  }
  if (i < n) scalar::axpy_dd(a, x_hi.subspan(i), x_lo.subspan(i), y_hi.subspan(i), y_lo.subspan(i));
}

// Four evaluation points per lane group; the coefficient loop runs inside.
__attribute__((target("avx2"))) void horner_complex(std::span<const double> coeffs, std::span<const double> z_re,
                                                    std::span<const double> z_im, std::span<double> out_re,
                                                    std::span<double> out_im) noexcept {
  const std::size_t points = z_re.size();
  if (coeffs.empty()) {
    for (std::size_t j = 0; j < points; ++j) out_re[j] = out_im[j] = 0.0;
    return;
  }
  const std::size_t top = coeffs.size() - 1;
  std::size_t j = 0;
  for (; j + 4 <= points; j += 4) {
    const __m256d zr = _mm256_loadu_pd(z_re.data() + j);
    const __m256d zi = _mm256_loadu_pd(z_im.data() + j);
    __m256d re = _mm256_set1_pd(coeffs[top]);
    __m256d im = _mm256_setzero_pd();
    for (std::size_t t = top; t-- > 0;) {
      const __m256d c = _mm256_set1_pd(coeffs[t]);
      const __m256d next_re = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(re, zr), _mm256_mul_pd(im, zi)), c);
      const __m256d next_im = _mm256_add_pd(_mm256_mul_pd(re, zi), _mm256_mul_pd(im, zr));
      re = next_re;
      im = next_im;
    }
    _mm256_storeu_pd(out_re.data() + j, re);
    _mm256_storeu_pd(out_im.data() + j, im);
  }
  if (j < points) {
    scalar::horner_complex(coeffs, z_re.subspan(j), z_im.subspan(j), out_re.subspan(j), out_im.subspan(j));
  }
}

#else

bool compiled() noexcept { return false; }

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept { scalar::axpy(a, x, y); }

void axpy_dd(DoubleDouble a, std::span<const double> x_hi, std::span<const double> x_lo, std::span<double> y_hi,
             std::span<double> y_lo) noexcept {
  scalar::axpy_dd(a, x_hi, x_lo, y_hi, y_lo);
}

void horner_complex(std::span<const double> coeffs, std::span<const double> z_re, std::span<const double> z_im,
                    std::span<double> out_re, std::span<double> out_im) noexcept {
  scalar::horner_complex(coeffs, z_re, z_im, out_re, out_im);
}

#endif

}  // namespace countprob::kernels::avx2
