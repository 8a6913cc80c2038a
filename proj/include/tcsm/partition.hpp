#pragma once

// Integer partitions. Partitions are stored with parts in decreasing order
// and enumerated in reverse-lexicographic order everywhere, e.g. for k=5:
// 5, 41, 32, 311, 221, 2111, 11111.

#include <string>
#include <vector>

namespace tcsm {

using Partition = std::vector<int>;

namespace detail {
inline void emit_partitions(int remaining, int max_part, int slots,
                            Partition& acc, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(acc);
    return;
  }
  if (slots == 0) return;
  int hi = std::min(remaining, max_part);
  for (int part = hi; part >= 1; --part) {
    if (remaining - part > part * (slots - 1)) continue;  // cannot finish
    acc.push_back(part);
    emit_partitions(remaining - part, part, slots - 1, acc, out);
    acc.pop_back();
  }
}
}  // namespace detail

// All partitions of weight k with at most max_len parts, reverse-lex order.
// k = 0 yields the single empty partition.
inline std::vector<Partition> partitions(int k, int max_len) {
  std::vector<Partition> out;
  if (k < 0) return out;
  Partition acc;
  detail::emit_partitions(k, k == 0 ? 1 : k, max_len, acc, out);
  return out;
}

// M(k): number of partitions of k with at most max_len parts. M(<0) = 0.
inline long partition_count(int k, int max_len) {
  if (k < 0) return 0;
  if (k == 0) return 1;
  // p(k, m): partitions of k into parts each <= m equals partitions with at
  // most m parts (conjugation), computed by the standard DP.
  std::vector<long> dp(k + 1, 0);
  dp[0] = 1;
  for (int part = 1; part <= max_len; ++part)
    for (int w = part; w <= k; ++w) dp[w] += dp[w - part];
  return dp[k];
}

// Number of solutions of s = sum_{l=1..n} l * n_l over nonnegative n_l,
// i.e. partitions of s with parts of size <= n.
inline long oscillator_tower_count(int s, int n) {
  return partition_count(s, n);  // conjugate statement of the same count
}

inline int weight(const Partition& a) {
  int w = 0;
  for (int part : a) w += part;
  return w;
}

// Compact key, e.g. (3,1,1) -> "311". Parts here never exceed 9 because the
// constraint regime keeps k <= N <= 8.
inline std::string partition_key(const Partition& a) {
  if (a.empty()) return "0";
  std::string s;
  for (int part : a) s += std::to_string(part);
  return s;
}

}  // namespace tcsm
