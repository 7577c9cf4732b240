#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "countprob/error.hpp"
#include "countprob/montecarlo.hpp"
#include "countprob/random_models.hpp"
#include "countprob/ursell.hpp"
#include "oracles.hpp"

using namespace countprob;

namespace {

std::vector<SymmetricTable> marginals(const ExchangeableJoint& joint, int k) {
  std::vector<SymmetricTable> out;
  for (int j = 1; j <= k; ++j) out.push_back(marginalize(joint, j));
  return out;
}

ExchangeableJoint all_or_nothing(int n) {
  std::vector<double> w(n + 1, 0.0);
  w[0] = 0.5;
  w[n] = 0.5;
  return ExchangeableJoint(n, w);
}

// P_k evaluated straight from the mixture atoms.
struct MixtureOracle {
  std::vector<MixtureAtom> atoms;

  double p(std::initializer_list<int> r) const {
    double total = 0.0;
    for (const auto& a : atoms) {
      double term = a.weight;
      for (int x : r) term *= x ? a.p : 1.0 - a.p;
      total += term;
    }
    return total;
  }
  double g1(int a) const { return p({a}); }
  double g2(int a, int b) const { return p({a, b}) - g1(a) * g1(b); }
  double g3(int a, int b, int c) const {
    return p({a, b, c}) - g1(a) * g1(b) * g1(c) - g1(a) * g2(b, c) - g1(b) * g2(a, c) - g1(c) * g2(a, b);
  }
  double g4(int a, int b, int c, int d) const {
    return p({a, b, c, d}) - g1(a) * g1(b) * g1(c) * g1(d)
         - g2(a, b) * g1(c) * g1(d) - g2(a, c) * g1(b) * g1(d) - g2(a, d) * g1(b) * g1(c)
         - g2(b, c) * g1(a) * g1(d) - g2(b, d) * g1(a) * g1(c) - g2(c, d) * g1(a) * g1(b)
         - g2(a, b) * g2(c, d) - g2(a, c) * g2(b, d) - g2(a, d) * g2(b, c)
         - g3(a, b, c) * g1(d) - g3(a, b, d) * g1(c) - g3(a, c, d) * g1(b) - g3(b, c, d) * g1(a);
  }
};

}  // namespace

TEST_CASE("partition counts follow the Bell numbers") {
  const auto bell = oracle::bell_numbers(12);
  CHECK(enumerate_set_partitions(1).size() == 1);
  CHECK(enumerate_set_partitions(3).size() == 5);
  CHECK(enumerate_set_partitions(6).size() == 203);
  for (int k = 1; k <= 10; ++k) CHECK(enumerate_set_partitions(k).size() == bell[k]);
  std::uint64_t streamed = 0;
  SetPartitionStream stream(12);
  while (stream.next()) ++streamed;
  CHECK(streamed == bell[12]);
}

TEST_CASE("enumerated partitions are valid, canonical and distinct") {
  for (int k = 1; k <= 7; ++k) {
    std::set<std::vector<std::vector<int>>> seen;
    for (const auto& part : enumerate_set_partitions(k)) {
      std::vector<int> covered;
      int previous_min = -1;
      for (const auto& block : part.blocks) {
        REQUIRE_FALSE(block.empty());
        CHECK(std::is_sorted(block.begin(), block.end()));
        CHECK(block.front() > previous_min);
        previous_min = block.front();
        covered.insert(covered.end(), block.begin(), block.end());
      }
      std::sort(covered.begin(), covered.end());
      std::vector<int> all(k);
      for (int i = 0; i < k; ++i) all[i] = i;
      CHECK(covered == all);
      CHECK(seen.insert(part.blocks).second);
    }
  }
}

TEST_CASE("partition enumeration range") {
  CHECK_THROWS_AS(enumerate_set_partitions(0), Error);
  CHECK_THROWS_AS(enumerate_set_partitions(13), Error);
}

TEST_CASE("marginalize examples") {
  const auto iid = build_mixture_joint({{{0.5, 1.0}}}, 3);
  CHECK(marginalize(iid, 2).value(2) == doctest::Approx(0.25).epsilon(1e-15));
  const auto aon = all_or_nothing(3);
  CHECK(marginalize(aon, 1).value(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(marginalize(aon, 2).value(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(marginalize(aon, 2).value(1) == 0.0);
  CHECK_THROWS_AS(marginalize(aon, 4), Error);
}

TEST_CASE("correlation examples") {
  const auto iid = build_mixture_joint({{{0.5, 1.0}}}, 3);
  const auto g_rec = correlation_recursive(marginals(iid, 2));
  const auto g_part = correlation_partition(marginals(iid, 2));
  for (double v : g_rec.values()) CHECK(std::abs(v) < 1e-16);
  for (double v : g_part.values()) CHECK(std::abs(v) < 1e-16);

  const auto aon = all_or_nothing(3);
  for (const auto& g : {correlation_recursive(marginals(aon, 2)), correlation_partition(marginals(aon, 2))}) {
    CHECK(g.value(2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.value(1) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(g.value(0) == doctest::Approx(0.25).epsilon(1e-15));
  }
  CHECK(std::abs(correlation_recursive(marginals(aon, 3)).value(3)) < 1e-15);
  CHECK(std::abs(correlation_partition(marginals(aon, 3)).value(3)) < 1e-15);
}

TEST_CASE("two-event correlation is P_2 minus the product of first-order marginals") {
  CountRng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto joint = build_mixture_joint(random_mixture(rng), 4);
    const auto p = marginals(joint, 2);
    const auto g = correlation_recursive_expanded(p);
    for (std::uint32_t r = 0; r < 4; ++r) {
      const double expected = p[1].at_pattern(r) - p[0].at_pattern(r & 1u) * p[0].at_pattern(r >> 1);
      CHECK(g[1].at(r) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("partition form matches the written-out four-event expansion") {
  CountRng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = random_mixture(rng);
    const MixtureOracle o{spec.atoms};
    const auto g = correlation_partition_all(marginals(build_mixture_joint(spec, 6), 4));
    const auto rec = correlation_recursive_expanded(marginals(build_mixture_joint(spec, 6), 4));
    for (std::uint32_t r = 0; r < 16; ++r) {
      const int a = r & 1, b = (r >> 1) & 1, c = (r >> 2) & 1, d = (r >> 3) & 1;
      CHECK(std::abs(g[3].at_pattern(r) - o.g4(a, b, c, d)) < 1e-14);
      CHECK(std::abs(rec[3].at(r) - o.g4(a, b, c, d)) < 1e-14);
      if (r < 8) CHECK(std::abs(g[2].at_pattern(r) - o.g3(a, b, c)) < 1e-14);
    }
  }
}

TEST_CASE("iid Bernoulli joints have no correlation beyond first order") {
  const auto joint = build_mixture_joint({{{0.3, 1.0}}}, 3);
  const auto g = correlation_partition(marginals(joint, 3));
  for (double v : g.values()) CHECK(std::abs(v) < 1e-15);

  CountRng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = rng.uniform();
    const auto iid = build_mixture_joint({{{p, 1.0}}}, 6);
    const auto c = measure_coefficients(iid);
    CHECK(c.coefficient(1) == doctest::Approx(6 * p).epsilon(1e-13));
    for (int k = 2; k <= 6; ++k) CHECK(std::abs(c.coefficient(k)) <= 1e-10);
  }
}

TEST_CASE("probability_from_correlations examples") {
  const std::vector<SymmetricTable> g{
      SymmetricTable::unchecked(1, TableKind::correlation, {0.5, 0.5}),
      SymmetricTable::unchecked(2, TableKind::correlation, {0.25, -0.25, 0.25}),
      SymmetricTable::unchecked(3, TableKind::correlation, {0, 0, 0, 0})};
  const auto p3 = probability_from_correlations(g);
  CHECK(p3.value(3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(p3.value(1)) < 1e-16);

  const double p = 0.3;
  std::vector<SymmetricTable> indep{SymmetricTable::unchecked(1, TableKind::correlation, {1 - p, p})};
  for (int k = 2; k <= 5; ++k) {
    indep.push_back(SymmetricTable::unchecked(k, TableKind::correlation, std::vector<double>(k + 1, 0.0)));
  }
  const auto p5 = probability_from_correlations(indep);
  for (int m = 0; m <= 5; ++m) {
    CHECK(p5.value(m) == doctest::Approx(std::pow(p, m) * std::pow(1 - p, 5 - m)).epsilon(1e-14));
  }
}

TEST_CASE("probability and correlation tables round trip") {
  CountRng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto joint = build_mixture_joint(random_mixture(rng), 6);
    const auto p = marginals(joint, 6);
    const auto g = correlation_partition_all(p);
    for (int k = 1; k <= 6; ++k) {
      const std::vector<SymmetricTable> prefix(g.begin(), g.begin() + k);
      const auto back = probability_from_correlations(prefix);
      for (int m = 0; m <= k; ++m) CHECK(std::abs(back.value(m) - p[k - 1].value(m)) <= 1e-12);
    }
  }
}

TEST_CASE("tables rebuilt from formal coefficients are marginally consistent") {
  CountRng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto model = random_model(rng, 4, 3.0).with_n(8 + trial);
    std::vector<SymmetricTable> g;
    for (int k = 1; k <= 5; ++k) g.push_back(reduced_correlation_table(model, k));
    for (int k = 2; k <= 5; ++k) {
      const auto pk = probability_from_correlations(std::span(g).first(k));
      const auto pk1 = probability_from_correlations(std::span(g).first(k - 1));
      for (int m = 0; m < k; ++m) {
        CHECK(std::abs(pk.value(m) + pk.value(m + 1) - pk1.value(m)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("recursion and partition form agree; G is symmetric and flips sign") {
  CountRng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const auto joint = build_mixture_joint(random_mixture(rng), n);
    const auto p = marginals(joint, n);
    const auto rec = correlation_recursive_expanded(p);
    const auto part = correlation_partition_all(p);
    for (int k = 1; k <= n; ++k) {
      for (std::uint32_t r = 0; r < (1u << k); ++r) {
        CHECK(std::abs(rec[k - 1].at(r) - part[k - 1].at_pattern(r)) <= 1e-12);
        // Same weight class, so equal by symmetry of the expanded view.
        const std::uint32_t rotated = ((r << 1) | (r >> (k - 1))) & ((1u << k) - 1);
        CHECK(std::abs(rec[k - 1].at(r) - rec[k - 1].at(rotated)) <= 1e-12);
        if (k >= 2 && (r & 2u) == 0) CHECK(std::abs(rec[k - 1].at(r | 2u) + rec[k - 1].at(r)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("correlation inputs are checked") {
  const auto joint = all_or_nothing(12);
  CHECK_THROWS_AS(correlation_recursive(marginals(joint, 11)), Error);
  std::vector<SymmetricTable> gap{marginalize(joint, 1), marginalize(joint, 3)};
  CHECK_THROWS_AS(correlation_partition(gap), Error);
  CHECK_THROWS_AS(correlation_partition(std::vector<SymmetricTable>{}), Error);
  CHECK_THROWS_AS(measure_coefficients(all_or_nothing(13)), Error);
}

TEST_CASE("measured coefficients of the all-or-nothing joint") {
  const auto c = measure_coefficients(all_or_nothing(3));
  CHECK(c.coefficient(1) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(c.coefficient(2) == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(std::abs(c.coefficient(3)) < 1e-13);
  CHECK(c.n() == 3);
}

TEST_CASE("two-point mixture measures its variance") {
  const auto c = measure_coefficients(build_mixture_joint({{{0.2, 0.5}, {0.8, 0.5}}}, 2));
  CHECK(c.coefficient(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.coefficient(2) == doctest::Approx(0.36).epsilon(1e-14));
}
