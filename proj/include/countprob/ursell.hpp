#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "countprob/model.hpp"

namespace countprob {

/// Highest order accepted by the literal permutation recursion.
inline constexpr int kMaxRecursiveOrder = 10;
/// Highest order accepted by set-partition enumeration (Bell(12) = 4,213,597).
inline constexpr int kMaxPartitionOrder = 12;

/// A partition of {0, ..., k-1}; element i stands for the argument r_{i+1}.
/// Blocks are ordered by smallest element, indices ascending inside a block.
struct SetPartition {
  std::vector<std::vector<int>> blocks;
};

/// Enumerates the set partitions of {0, ..., k-1} exactly once each, in
/// lexicographic order of their restricted growth strings.
class SetPartitionStream {
 public:
  explicit SetPartitionStream(int k);

  /// Advances to the next partition; false once the stream is exhausted.
  bool next();

  /// Block label of each element for the current partition (labels are
  /// 0-based and first appear in increasing order).
  std::span<const int> labels() const noexcept { return labels_; }
  int block_count() const noexcept { return block_count_; }
  SetPartition current() const;

 private:
  int k_;
  bool started_ = false;
  int block_count_ = 0;
  std::vector<int> labels_;
  std::vector<int> prefix_max_;
};

std::vector<SetPartition> enumerate_set_partitions(int k);

/// Values of a function on {0,1}^k indexed by pattern bits (bit i = r_{i+1}).
struct ExpandedTable {
  int order = 0;
  std::vector<double> values;

  double at(std::uint32_t pattern) const { return values[pattern]; }
};

/// Marginal probability table of order k of an exchangeable joint.
SymmetricTable marginalize(const ExchangeableJoint& joint, int k);

/// Correlation functions G_1..G_k on the expanded view, computed from the
/// recursive definition that sums over permutations of {2..k}. The
/// probability tables must cover orders 1..k, k <= kMaxRecursiveOrder.
std::vector<ExpandedTable> correlation_recursive_expanded(std::span<const SymmetricTable> p_tables);

/// Compressed G_k from the literal recursion; reads the pattern 1..10..0 of
/// each weight class from the expanded result.
SymmetricTable correlation_recursive(std::span<const SymmetricTable> p_tables);

/// G_1..G_k via the partition form: G_j = P_j minus the sum over partitions
/// with at least two blocks of products of lower-order G's.
std::vector<SymmetricTable> correlation_partition_all(std::span<const SymmetricTable> p_tables);
SymmetricTable correlation_partition(std::span<const SymmetricTable> p_tables);

/// Inverse expansion: P_k as the sum over all partitions of products of G's.
SymmetricTable probability_from_correlations(std::span<const SymmetricTable> g_tables);

/// Measures C_1..C_N of a joint (N <= kMaxPartitionOrder); the result carries n = N.
CorrelationModel measure_coefficients(const ExchangeableJoint& joint);

}  // namespace countprob
