#include "rmlab/noncrossing.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "rmlab/error.hpp"

namespace rmlab {

namespace {

BlockTypeCounts merge_types(const BlockTypeCounts& a, const BlockTypeCounts& b) {
  BlockTypeCounts out;
  for (const auto& [ta, ca] : a) {
    for (const auto& [tb, cb] : b) {
      std::vector<int> merged(ta);
      merged.insert(merged.end(), tb.begin(), tb.end());
      std::sort(merged.begin(), merged.end(), std::greater<>());
      out[merged] += ca * cb;
    }
  }
  return out;
}

// Distributes `remaining` elements over `gaps` intervals (one after each
// element of the first block) and accumulates the product of their types.
void fill_gaps(int gaps, int remaining, const BlockTypeCounts& acc,
               const std::array<BlockTypeCounts, kMaxPartitionOrder + 1>& table,
               BlockTypeCounts& out) {
  if (gaps == 0) {
    if (remaining != 0) return;
    for (const auto& [t, c] : acc) out[t] += c;
    return;
  }
  for (int len = 0; len <= remaining; ++len) {
    fill_gaps(gaps - 1, remaining - len, merge_types(acc, table[len]), table, out);
  }
}

const std::array<BlockTypeCounts, kMaxPartitionOrder + 1>& type_table() {
  static const auto table = [] {
    std::array<BlockTypeCounts, kMaxPartitionOrder + 1> t;
    t[0][{}] = 1;
    for (int n = 1; n <= kMaxPartitionOrder; ++n) {
      for (int s = 1; s <= n; ++s) {
        BlockTypeCounts seed;
        seed[{s}] = 1;
        fill_gaps(s, n - s, seed, t, t[n]);
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

const BlockTypeCounts& noncrossing_block_types(int n) {
  if (n < 0 || n > kMaxPartitionOrder) {
    raise(ErrorKind::Size, "non-crossing partitions are enumerated only up to order 12");
  }
  return type_table()[static_cast<std::size_t>(n)];
}

std::uint64_t noncrossing_count(int n) {
  std::uint64_t total = 0;
  for (const auto& [t, c] : noncrossing_block_types(n)) total += c;
  return total;
}

}  // namespace rmlab
