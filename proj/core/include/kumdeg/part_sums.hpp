#pragma once

// Feasibility tables for "k parts in [1, cap] whose values sum to s", where a
// part p contributes p^2 (squares) or binom(p, 2) (triangular numbers).
// Optionally tracks how many of the parts are odd, which the half-integer
// degree enumerations need.
//
// Rows are bitsets over the sum; row(k, j, c) is built from row(k, j, c-1)
// and row(k-1, j - [c odd], c) shifted by value(c).

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace kumdeg {

enum class PartValue { Square, Triangular };

constexpr std::int64_t part_value(PartValue kind, std::int64_t p) {
  return kind == PartValue::Square ? p * p : p * (p - 1) / 2;
}

class PartSumTable {
 public:
  /// max_odd < 0 disables parity tracking.
  PartSumTable(PartValue kind, int max_parts, int max_part, std::int64_t max_sum, int max_odd = -1);

  PartValue kind() const { return kind_; }
  int max_parts() const { return parts_; }
  int max_part() const { return cap_; }
  std::int64_t max_sum() const { return sum_; }
  bool tracks_parity() const { return odd_ >= 0; }
  /// Whether queries up to these limits can be answered.
  bool covers(int parts, int max_part, std::int64_t sum) const;

  /// True iff some `parts` values in [1, max_part] (with exactly `odd` odd
  /// ones, when odd >= 0) have values summing to `sum`.
  bool reachable(int parts, int max_part, std::int64_t sum, int odd = -1) const;

  /// Lexicographically smallest non-increasing sequence with that property.
  std::optional<std::vector<std::int64_t>> smallest_descending(int parts, int max_part, std::int64_t sum,
                                                               int odd = -1) const;

  /// Calls fn(s) for every reachable sum s in [lo, hi], ascending.
  template <typename Fn>
  void for_each_reachable(int parts, int max_part, int odd, std::int64_t lo, std::int64_t hi, Fn&& fn) const {
    if (lo < 0) lo = 0;
    if (hi > sum_) hi = sum_;
    if (lo > hi || parts < 0 || parts > parts_) return;
    const int c = clamp_cap(max_part);
    const int j_lo = odd < 0 ? 0 : odd;
    const int j_hi = odd < 0 ? std::max(odd_, 0) : odd;
    if (odd > std::max(odd_, 0)) return;
    for (std::int64_t w = lo / 64; w <= hi / 64; ++w) {
      std::uint64_t bits = 0;
      for (int j = j_lo; j <= j_hi; ++j) bits |= row(parts, j, c)[w];
      while (bits != 0) {
        const std::int64_t s = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        if (s < lo) continue;
        if (s > hi) return;
        fn(s);
      }
    }
  }

 private:
  int clamp_cap(int max_part) const;
  const std::uint64_t* row(int k, int j, int c) const;
  std::uint64_t* row(int k, int j, int c);
  bool test(int k, int j, int c, std::int64_t s) const;

  PartValue kind_;
  int parts_;
  int cap_;
  std::int64_t sum_;
  int odd_;
  bool sum_bounds_cap_ = false;  // parts above cap_ cannot fit under sum_
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Process-wide tables without parity tracking, grown on demand and shared
/// read-only between threads.
std::shared_ptr<const PartSumTable> shared_part_table(PartValue kind, int max_parts, int max_part,
                                                      std::int64_t max_sum);

}  // namespace kumdeg
