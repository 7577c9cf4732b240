#include "countprob/ursell.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "countprob/error.hpp"

namespace countprob {
namespace {

void check_tables(std::span<const SymmetricTable> tables, int max_order, const char* what) {
  const int k = static_cast<int>(tables.size());
  if (k < 1) throw Error(ErrorKind::OutOfRange, std::string(what) + ": need at least one table");
  if (k > max_order) {
    throw Error(ErrorKind::OutOfRange, std::string(what) + ": order " + std::to_string(k) + " exceeds " +
                                           std::to_string(max_order));
  }
  for (int j = 0; j < k; ++j) {
    if (tables[static_cast<std::size_t>(j)].order() != j + 1) {
      throw Error(ErrorKind::BadShape, std::string(what) + ": tables must have orders 1..k in sequence");
    }
  }
}

// Σ over partitions of {0..k-1} of Π_B g[|B|][ones in B], for the pattern whose
// first m elements are ones, m = 0..k. Partitions with fewer than min_blocks
// blocks are skipped. Runs in extended precision: the sums cancel heavily
// when the higher-order G vanish.
std::vector<long double> partition_sum(int k, std::span<const std::vector<long double>> g, int min_blocks) {
  std::vector<long double> acc(static_cast<std::size_t>(k) + 1, 0.0L);
  std::vector<int> size(static_cast<std::size_t>(k));
  std::vector<int> ones(static_cast<std::size_t>(k));
  SetPartitionStream stream(k);
  while (stream.next()) {
    const int nb = stream.block_count();
    if (nb < min_blocks) continue;
    const auto labels = stream.labels();
    std::fill(size.begin(), size.begin() + nb, 0);
    std::fill(ones.begin(), ones.begin() + nb, 0);
    for (int lab : labels) ++size[static_cast<std::size_t>(lab)];
    for (int m = 0; m <= k; ++m) {
      if (m > 0) ++ones[static_cast<std::size_t>(labels[static_cast<std::size_t>(m - 1)])];
      long double prod = 1.0L;
      for (int b = 0; b < nb; ++b) {
        const auto sb = static_cast<std::size_t>(size[static_cast<std::size_t>(b)]);
        prod *= g[sb][static_cast<std::size_t>(ones[static_cast<std::size_t>(b)])];
      }
      acc[static_cast<std::size_t>(m)] += prod;
    }
  }
  return acc;
}

std::vector<long double> marginal_values(const ExchangeableJoint& joint, int k) {
  const int n = joint.n();
  if (k < 1 || k > n) throw Error(ErrorKind::OutOfRange, "marginal order must lie in [1, n]");
  const auto w = joint.pattern_weight();
  std::vector<long double> values(static_cast<std::size_t>(k) + 1, 0.0L);
  for (int m = 0; m <= k; ++m) {
    long double total = 0.0L;
    long double choose = 1.0L;
    for (int j = 0; j <= n - k; ++j) {
      total += choose * w[static_cast<std::size_t>(m + j)];
      choose = choose * (n - k - j) / (j + 1);
    }
    values[static_cast<std::size_t>(m)] = total;
  }
  return values;
}

// G_1..G_k in extended precision from extended-precision P tables (p[j] = P_j).
std::vector<std::vector<long double>> partition_correlations(const std::vector<std::vector<long double>>& p) {
  const int kmax = static_cast<int>(p.size()) - 1;
  std::vector<std::vector<long double>> g(static_cast<std::size_t>(kmax) + 1);
  g[1] = p[1];
  for (int j = 2; j <= kmax; ++j) {
    const auto lower =
        partition_sum(j, std::span<const std::vector<long double>>(g.data(), static_cast<std::size_t>(j)), 2);
    g[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(j) + 1);
    for (int m = 0; m <= j; ++m) {
      g[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] =
          p[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] - lower[static_cast<std::size_t>(m)];
    }
  }
  return g;
}

std::vector<double> rounded(const std::vector<long double>& v) { return {v.begin(), v.end()}; }

}  // namespace

SetPartitionStream::SetPartitionStream(int k) : k_(k) {
  if (k < 1 || k > kMaxPartitionOrder) {
    throw Error(ErrorKind::OutOfRange, "set partitions are enumerated for 1 <= k <= 12");
  }
  labels_.assign(static_cast<std::size_t>(k), 0);
  prefix_max_.assign(static_cast<std::size_t>(k), 0);
}

bool SetPartitionStream::next() {
  if (!started_) {
    started_ = true;
    block_count_ = 1;
    return true;
  }
  // prefix_max_[i] = max(labels_[0..i-1]); position 0 is pinned to label 0.
  for (int i = k_ - 1; i >= 1; --i) {
    const auto ui = static_cast<std::size_t>(i);
    if (labels_[ui] <= prefix_max_[ui]) {
      ++labels_[ui];
      int running = std::max(prefix_max_[ui], labels_[ui]);
      for (int j = i + 1; j < k_; ++j) {
        labels_[static_cast<std::size_t>(j)] = 0;
        prefix_max_[static_cast<std::size_t>(j)] = running;
      }
      block_count_ = running + 1;
      return true;
    }
  }
  return false;
}

SetPartition SetPartitionStream::current() const {
  SetPartition out;
  out.blocks.resize(static_cast<std::size_t>(block_count_));
  for (int i = 0; i < k_; ++i) out.blocks[static_cast<std::size_t>(labels_[static_cast<std::size_t>(i)])].push_back(i);
  return out;
}

std::vector<SetPartition> enumerate_set_partitions(int k) {
  std::vector<SetPartition> out;
  SetPartitionStream stream(k);
  while (stream.next()) out.push_back(stream.current());
  return out;
}

SymmetricTable marginalize(const ExchangeableJoint& joint, int k) {
  return SymmetricTable(k, TableKind::probability, rounded(marginal_values(joint, k)));
}

std::vector<ExpandedTable> correlation_recursive_expanded(std::span<const SymmetricTable> p_tables) {
  check_tables(p_tables, kMaxRecursiveOrder, "correlation_recursive");
  const int kmax = static_cast<int>(p_tables.size());

  std::vector<std::vector<double>> p_expanded;
  for (const auto& t : p_tables) p_expanded.push_back(t.expanded());

  std::vector<ExpandedTable> g;
  g.push_back({1, p_expanded[0]});

  std::vector<int> perm;
  std::vector<std::uint32_t> suffix;
  for (int k = 2; k <= kmax; ++k) {
    std::vector<double> inv_weight(static_cast<std::size_t>(k));
    for (int l = 1; l <= k - 1; ++l) inv_weight[static_cast<std::size_t>(l)] = 1.0 / (factorial(l - 1) * factorial(k - l));

    const std::uint32_t patterns = 1u << k;
    ExpandedTable gk{k, std::vector<double>(patterns)};
    suffix.assign(static_cast<std::size_t>(k) + 1, 0);
    for (std::uint32_t r = 0; r < patterns; ++r) {
      double subtracted = 0.0;
      perm.resize(static_cast<std::size_t>(k - 1));
      std::iota(perm.begin(), perm.end(), 1);
      do {
        // suffix[l] packs r_sigma(l+1..k) for the P_{k-l} factor.
        suffix[static_cast<std::size_t>(k - 1)] = 0;
        for (int pos = k - 2; pos >= 0; --pos) {
          const std::uint32_t bit = (r >> perm[static_cast<std::size_t>(pos)]) & 1u;
          suffix[static_cast<std::size_t>(pos)] = (suffix[static_cast<std::size_t>(pos + 1)] << 1) | bit;
        }
        std::uint32_t head = r & 1u;
        for (int l = 1; l <= k - 1; ++l) {
          if (l > 1) head |= ((r >> perm[static_cast<std::size_t>(l - 2)]) & 1u) << (l - 1);
          const double gl = g[static_cast<std::size_t>(l - 1)].at(head);
          const double pkl = p_expanded[static_cast<std::size_t>(k - l - 1)][suffix[static_cast<std::size_t>(l - 1)]];
          subtracted += inv_weight[static_cast<std::size_t>(l)] * gl * pkl;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      gk.values[r] = p_expanded[static_cast<std::size_t>(k - 1)][r] - subtracted;
    }
    g.push_back(std::move(gk));
  }
  return g;
}

SymmetricTable correlation_recursive(std::span<const SymmetricTable> p_tables) {
  const auto g = correlation_recursive_expanded(p_tables);
  const auto& top = g.back();
  std::vector<double> values(static_cast<std::size_t>(top.order) + 1);
  for (int m = 0; m <= top.order; ++m) values[static_cast<std::size_t>(m)] = top.at((1u << m) - 1u);
  return SymmetricTable::unchecked(top.order, TableKind::correlation, std::move(values));
}

std::vector<SymmetricTable> correlation_partition_all(std::span<const SymmetricTable> p_tables) {
  check_tables(p_tables, kMaxPartitionOrder, "correlation_partition");
  std::vector<std::vector<long double>> p(p_tables.size() + 1);
  for (std::size_t j = 0; j < p_tables.size(); ++j) p[j + 1].assign(p_tables[j].values().begin(), p_tables[j].values().end());
  const auto g = partition_correlations(p);
  std::vector<SymmetricTable> out;
  for (std::size_t j = 1; j < g.size(); ++j) {
    out.push_back(SymmetricTable::unchecked(static_cast<int>(j), TableKind::correlation, rounded(g[j])));
  }
  return out;
}

SymmetricTable correlation_partition(std::span<const SymmetricTable> p_tables) {
  return correlation_partition_all(p_tables).back();
}

SymmetricTable probability_from_correlations(std::span<const SymmetricTable> g_tables) {
  check_tables(g_tables, kMaxPartitionOrder, "probability_from_correlations");
  const int k = static_cast<int>(g_tables.size());
  std::vector<std::vector<long double>> g(static_cast<std::size_t>(k) + 1);
  for (int j = 1; j <= k; ++j) {
    const auto v = g_tables[static_cast<std::size_t>(j - 1)].values();
    g[static_cast<std::size_t>(j)].assign(v.begin(), v.end());
  }
  return SymmetricTable::unchecked(k, TableKind::probability, rounded(partition_sum(k, g, 1)));
}

CorrelationModel measure_coefficients(const ExchangeableJoint& joint) {
  const int n = joint.n();
  if (n > kMaxPartitionOrder) throw Error(ErrorKind::OutOfRange, "coefficient measurement limited to n <= 12");
  std::vector<std::vector<long double>> p(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = marginal_values(joint, k);
  const auto g = partition_correlations(p);
  std::vector<double> c;
  long double scale = 1.0L;
  for (int k = 1; k <= n; ++k) {
    scale *= n;
    c.push_back(static_cast<double>(scale * g[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)]));
  }
  return CorrelationModel(std::move(c), n);
}

}  // namespace countprob
