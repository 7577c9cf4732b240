#include "countprob/kernels.hpp"

#include "double_double.hpp"

namespace countprob::kernels::scalar {

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void axpy_dd(DoubleDouble a, std::span<const double> x_hi, std::span<const double> x_lo, std::span<double> y_hi,
             std::span<double> y_lo) noexcept {
  const std::size_t n = x_hi.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = detail::dd_add({y_hi[i], y_lo[i]}, detail::dd_mul(a, {x_hi[i], x_lo[i]}));
    y_hi[i] = r.hi;
    y_lo[i] = r.lo;
  }
}

void horner_complex(std::span<const double> coeffs, std::span<const double> z_re,
                    std::span<const double> z_im, std::span<double> out_re, std::span<double> out_im) noexcept {
  const std::size_t points = z_re.size();
  if (coeffs.empty()) {
    for (std::size_t j = 0; j < points; ++j) out_re[j] = out_im[j] = 0.0;
    return;
  }
  const std::size_t top = coeffs.size() - 1;
  for (std::size_t j = 0; j < points; ++j) {
    const double zr = z_re[j];
    const double zi = z_im[j];
    double re = coeffs[top];
    double im = 0.0;
    for (std::size_t t = top; t-- > 0;) {
      const double next_re = (re * zr - im * zi) + coeffs[t];
      const double next_im = re * zi + im * zr;
      re = next_re;
      im = next_im;
    }
    out_re[j] = re;
    out_im[j] = im;
  }
}

}  // namespace countprob::kernels::scalar
