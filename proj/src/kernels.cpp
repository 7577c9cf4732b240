#include "countprob/kernels.hpp"

#include <atomic>

#include "countprob/error.hpp"

namespace countprob::kernels {
namespace {

Isa probe() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  if (avx2::compiled() && __builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{probe()};
  return isa;
}

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (b < a) throw Error(ErrorKind::BadShape, what);
}

}  // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept { return probe(); }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && probe() != Isa::avx2) throw Error(ErrorKind::OutOfRange, "AVX2 not available on this CPU");
  active().store(isa, std::memory_order_relaxed);
}

void reset_isa() noexcept { active().store(probe(), std::memory_order_relaxed); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_lengths(x.size(), y.size(), "axpy: output shorter than input");
  if (active_isa() == Isa::avx2) {
    avx2::axpy(a, x, y);
  } else {
    scalar::axpy(a, x, y);
  }
}

void axpy_dd(DoubleDouble a, std::span<const double> x_hi, std::span<const double> x_lo, std::span<double> y_hi,
             std::span<double> y_lo) {
  check_lengths(x_hi.size(), x_lo.size(), "axpy_dd: x_lo shorter than x_hi");
  check_lengths(x_hi.size(), y_hi.size(), "axpy_dd: y_hi shorter than x_hi");
  check_lengths(x_hi.size(), y_lo.size(), "axpy_dd: y_lo shorter than x_hi");
  if (active_isa() == Isa::avx2) {
    avx2::axpy_dd(a, x_hi, x_lo, y_hi, y_lo);
  } else {
    scalar::axpy_dd(a, x_hi, x_lo, y_hi, y_lo);
  }
}

void horner_complex(std::span<const double> coeffs, std::span<const double> z_re, std::span<const double> z_im,
                    std::span<double> out_re, std::span<double> out_im) {
  check_lengths(z_re.size(), z_im.size(), "horner_complex: z_im shorter than z_re");
  check_lengths(z_re.size(), out_re.size(), "horner_complex: out_re too short");
  check_lengths(z_re.size(), out_im.size(), "horner_complex: out_im too short");
  if (active_isa() == Isa::avx2) {
    avx2::horner_complex(coeffs, z_re, z_im, out_re, out_im);
  } else {
    scalar::horner_complex(coeffs, z_re, z_im, out_re, out_im);
  }
}

}  // namespace countprob::kernels
