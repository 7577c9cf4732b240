#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops. Each kernel has a scalar reference and an AVX2
// variant; the variant is picked once at runtime from CPUID. Both variants
// perform the same operations in the same order without FMA contraction, so
// their results are bit-identical.

namespace countprob::kernels {

enum class Isa { scalar, avx2 };

/// Unevaluated sum hi + lo with |lo| <= ulp(hi) / 2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

std::string_view to_string(Isa isa) noexcept;

/// Best instruction set supported by the running CPU.
Isa detected_isa() noexcept;
/// Instruction set used by the dispatching entry points.
Isa active_isa() noexcept;
/// Pins dispatch to `isa`; throws if the CPU lacks it.
void force_isa(Isa isa);
void reset_isa() noexcept;

/// y[i] += a * x[i], for i < x.size() (y must be at least as long).
void axpy(double a, std::span<const double> x, std::span<double> y);

/// y[i] += a * x[i] in double-double arithmetic; x and y are split into
/// high and low parts.
void axpy_dd(DoubleDouble a, std::span<const double> x_hi, std::span<const double> x_lo, std::span<double> y_hi,
             std::span<double> y_lo);
/// out[j] = Σ_t coeffs[t] z_j^t for complex points z_j = (z_re[j], z_im[j]).
void horner_complex(std::span<const double> coeffs, std::span<const double> z_re,
                    std::span<const double> z_im, std::span<double> out_re, std::span<double> out_im);

namespace scalar {
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
void axpy_dd(DoubleDouble a, std::span<const double> x_hi, std::span<const double> x_lo, std::span<double> y_hi,
             std::span<double> y_lo) noexcept;
void horner_complex(std::span<const double> coeffs, std::span<const double> z_re,
                    std::span<const double> z_im, std::span<double> out_re, std::span<double> out_im) noexcept;
}  // namespace scalar

namespace avx2 {
/// True when this build contains the AVX2 variants (x86-64 GCC/Clang).
bool compiled() noexcept;
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
void axpy_dd(DoubleDouble a, std::span<const double> x_hi, std::span<const double> x_lo, std::span<double> y_hi,
             std::span<double> y_lo) noexcept;
void horner_complex(std::span<const double> coeffs, std::span<const double> z_re,
                    std::span<const double> z_im, std::span<double> out_re, std::span<double> out_im) noexcept;
}  // namespace avx2

}  // namespace countprob::kernels
