#pragma once

#include <span>
#include <stdexcept>
#include <string>

namespace serp_audit {

// Weight of rank r in a list of size n: the mean of 1/c over c = r..n,
// i.e. (1/n) * sum_{c=r..n} 1/c. Strictly decreasing in r; the weights of
// a full list sum to exactly 1.
inline double rank_weight(int r, int n) {
  if (n < 1) throw std::domain_error("rank_weight: list size must be >= 1, got " + std::to_string(n));
  if (r < 1 || r > n)
    throw std::domain_error("rank_weight: rank " + std::to_string(r) +
                            " outside 1.." + std::to_string(n));
  double tail = 0.0;
  for (int c = r; c <= n; ++c) tail += 1.0 / static_cast<double>(c);
  return tail / static_cast<double>(n);
}

// Sum of rank_weight over the given ranks. Ranks must be sorted ascending;
// summation order is part of the contract so that every caller computing
// the same sum gets bit-identical results.
inline double rank_weight_sum(std::span<const int> sorted_ranks, int n) {
  double total = 0.0;
  for (int r : sorted_ranks) total += rank_weight(r, n);
  return total;
}

// Weight of rank r renormalized over the ranks actually collected, so that
// a partial list still distributes a total weight of 1 instead of silently
// counting the missing positions as zeros.
inline double rescaled_weight(int r, int n, std::span<const int> collected_ranks) {
  if (collected_ranks.empty())
    throw std::domain_error("rescaled_weight: collected_ranks is empty");
  bool found = false;
  int prev = 0;
  for (int c : collected_ranks) {
    if (c < 1 || c > n)
      throw std::domain_error("rescaled_weight: collected rank " + std::to_string(c) +
                              " outside 1.." + std::to_string(n));
    if (c <= prev) throw std::domain_error("rescaled_weight: collected_ranks not sorted ascending");
    prev = c;
    found |= (c == r);
  }
  if (!found)
    throw std::domain_error("rescaled_weight: rank " + std::to_string(r) + " was not collected");
  return rank_weight(r, n) / rank_weight_sum(collected_ranks, n);
}

}  // namespace serp_audit
