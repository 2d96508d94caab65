#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace rmlab {

inline constexpr int kMaxPartitionOrder = 12;

/// Block sizes of a partition, sorted descending, mapped to how many
/// non-crossing partitions of {1..n} have exactly that block structure.
using BlockTypeCounts = std::map<std::vector<int>, std::uint64_t>;

/// Enumerates NC(n) by the block containing 1: its elements split the
/// rest of {1..n} into intervals that are partitioned independently.
/// n <= 12; larger orders raise a size error.
const BlockTypeCounts& noncrossing_block_types(int n);

/// |NC(n)|, the n-th Catalan number.
std::uint64_t noncrossing_count(int n);

}  // namespace rmlab
