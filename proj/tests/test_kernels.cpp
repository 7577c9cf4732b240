#include <doctest.h>

#include <bit>
#include <complex>
#include <cstring>

#include "countprob/count_finite.hpp"
#include "countprob/count_limit.hpp"
#include "countprob/kernels.hpp"
#include "countprob/montecarlo.hpp"
#include "countprob/random_models.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

using namespace countprob;
namespace k = countprob::kernels;

namespace {

bool have_avx2() { return k::avx2::compiled() && k::detected_isa() == k::Isa::avx2; }

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_vector(CountRng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * (2.0 * rng.uniform() - 1.0);
  return v;
}

struct IsaGuard {
  ~IsaGuard() { k::reset_isa(); }
};

}  // namespace

TEST_CASE("scalar axpy") {
  const std::vector<double> x{1, 2, 3};
  std::vector<double> y{10, 20, 30, 40};
  k::scalar::axpy(2.0, x, y);
  CHECK(y == std::vector<double>{12, 24, 36, 40});
}

TEST_CASE("scalar horner matches complex powers") {
  CountRng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto coeffs = random_vector(rng, 1 + rng.below(12), 3.0);
    const auto re = random_vector(rng, 17, 1.0);
    const auto im = random_vector(rng, 17, 1.0);
    std::vector<double> out_re(17), out_im(17);
    k::scalar::horner_complex(coeffs, re, im, out_re, out_im);
    for (int j = 0; j < 17; ++j) {
      std::complex<double> z(re[j], im[j]), power = 1, sum = 0;
      for (double c : coeffs) {
        sum += c * power;
        power *= z;
      }
      CHECK(std::abs(std::complex<double>(out_re[j], out_im[j]) - sum) < 1e-13);
    }
  }
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
  if (!have_avx2()) {
    MESSAGE("AVX2 unavailable; skipping");
    return;
  }
  CountRng rng(2);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto x = random_vector(rng, n, 10.0);
    auto y1 = random_vector(rng, n + 3, 10.0);
    auto y2 = y1;
    const double a = 2.0 * rng.uniform() - 1.0;
    k::scalar::axpy(a, x, y1);
    k::avx2::axpy(a, x, y2);
    CHECK(same_bits(y1, y2));

    const auto coeffs = random_vector(rng, 1 + n % 9, 5.0);
    const auto re = random_vector(rng, n, 1.0);
    const auto im = random_vector(rng, n, 1.0);
    std::vector<double> sr(n), si(n), vr(n), vi(n);
    k::scalar::horner_complex(coeffs, re, im, sr, si);
    k::avx2::horner_complex(coeffs, re, im, vr, vi);
    CHECK(same_bits(sr, vr));
    CHECK(same_bits(si, vi));
  }
}

TEST_CASE("double-double axpy carries about 106 bits") {
  using Quad = boost::multiprecision::cpp_bin_float_quad;
  CountRng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<double> xh(n), xl(n), yh(n), yl(n);
    for (std::size_t i = 0; i < n; ++i) {
      xh[i] = 2.0 * rng.uniform() - 1.0;
      xl[i] = xh[i] * 1e-17 * rng.uniform();
      yh[i] = 2.0 * rng.uniform() - 1.0;
      yl[i] = yh[i] * 1e-17 * rng.uniform();
    }
    const k::DoubleDouble a{1.0 / 3.0, 1.0 / 3.0 * 0x1.0p-54};
    std::vector<Quad> expected(n);
    for (std::size_t i = 0; i < n; ++i) {
      expected[i] = Quad(yh[i]) + Quad(yl[i]) + (Quad(a.hi) + Quad(a.lo)) * (Quad(xh[i]) + Quad(xl[i]));
    }
    k::scalar::axpy_dd(a, xh, xl, yh, yl);
    for (std::size_t i = 0; i < n; ++i) {
      const Quad err = abs(Quad(yh[i]) + Quad(yl[i]) - expected[i]);
      CHECK(err.convert_to<double>() <= 1e-30 * std::max(1.0, std::abs(yh[i])));
      CHECK(std::abs(yl[i]) <= 0x1.0p-53 * std::abs(yh[i]));
    }
  }
}

TEST_CASE("avx2 double-double axpy is bit-identical to scalar") {
  if (!have_avx2()) {
    MESSAGE("AVX2 unavailable; skipping");
    return;
  }
  CountRng rng(5);
  for (std::size_t n = 0; n <= 37; ++n) {
    const auto xh = random_vector(rng, n, 1e3);
    auto xl = random_vector(rng, n, 1e-14);
    auto yh1 = random_vector(rng, n, 1e3);
    auto yl1 = random_vector(rng, n, 1e-14);
    auto yh2 = yh1;
    auto yl2 = yl1;
    const k::DoubleDouble a{rng.uniform() * 7.0, rng.uniform() * 1e-16};
    k::scalar::axpy_dd(a, xh, xl, yh1, yl1);
    k::avx2::axpy_dd(a, xh, xl, yh2, yl2);
    CHECK(same_bits(yh1, yh2));
    CHECK(same_bits(yl1, yl2));
  }
}

TEST_CASE("dispatch follows the forced instruction set") {
  IsaGuard guard;
  k::force_isa(k::Isa::scalar);
  CHECK(k::active_isa() == k::Isa::scalar);
  k::reset_isa();
  CHECK(k::active_isa() == k::detected_isa());
  if (!have_avx2()) CHECK_THROWS(k::force_isa(k::Isa::avx2));
}

TEST_CASE("dispatch rejects short outputs") {
  std::vector<double> x(4), y(3);
  CHECK_THROWS(k::axpy(1.0, x, y));
}

TEST_CASE("pmf computations do not depend on the instruction set") {
  if (!have_avx2()) {
    MESSAGE("AVX2 unavailable; skipping");
    return;
  }
  IsaGuard guard;
  CountRng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto model = random_model(rng, 4, 5.0).with_n(200);
    std::vector<double> u(32);
    for (int j = 0; j < 32; ++j) u[j] = 0.2 * j;
    k::force_isa(k::Isa::scalar);
    const auto a = finite_count_pmf(model);
    const auto ca = char_fn(model, u);
    k::force_isa(k::Isa::avx2);
    const auto b = finite_count_pmf(model);
    const auto cb = char_fn(model, u);
    CHECK(same_bits(a.values, b.values));
    CHECK(a.error_estimate == b.error_estimate);
    for (int j = 0; j < 32; ++j) CHECK(ca.chi[j] == cb.chi[j]);
  }
}
