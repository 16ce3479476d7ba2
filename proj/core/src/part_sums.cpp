#include "kumdeg/part_sums.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <stdexcept>

namespace kumdeg {

namespace {

void shift_or(std::uint64_t* dst, const std::uint64_t* src, std::size_t words, std::int64_t shift) {
  const auto ws = static_cast<std::size_t>(shift / 64);
  const auto bs = static_cast<unsigned>(shift % 64);
  if (ws >= words) return;
  for (std::size_t i = words; i-- > ws;) {
    std::uint64_t v = src[i - ws] << bs;
    if (bs != 0 && i - ws >= 1) v |= src[i - ws - 1] >> (64 - bs);
    dst[i] |= v;
  }
}

}  // namespace

PartSumTable::PartSumTable(PartValue kind, int max_parts, int max_part, std::int64_t max_sum, int max_odd)
    : kind_(kind), parts_(max_parts), cap_(0), sum_(max_sum), odd_(max_odd) {
  if (max_parts < 0 || max_part < 0 || max_sum < 0) throw std::invalid_argument("PartSumTable: negative size");
  // a part whose value exceeds every representable sum can never be used
  while (cap_ < max_part && part_value(kind, cap_ + 1) <= max_sum) ++cap_;
  sum_bounds_cap_ = part_value(kind, cap_ + 1) > max_sum;
  words_ = static_cast<std::size_t>(sum_ / 64 + 1);
  const std::size_t js = static_cast<std::size_t>(std::max(odd_, 0) + 1);
  bits_.assign(static_cast<std::size_t>(parts_ + 1) * js * static_cast<std::size_t>(cap_ + 1) * words_, 0);

  for (int c = 0; c <= cap_; ++c) row(0, 0, c)[0] = 1;
  for (int c = 1; c <= cap_; ++c) {
    const std::int64_t v = part_value(kind_, c);
    const int o = tracks_parity() ? (c & 1) : 0;
    for (int k = 1; k <= parts_; ++k) {
      for (int j = 0; j <= std::max(odd_, 0); ++j) {
        std::uint64_t* dst = row(k, j, c);
        const std::uint64_t* prev = row(k, j, c - 1);
        std::copy(prev, prev + words_, dst);
        if (j - o >= 0) shift_or(dst, row(k - 1, j - o, c), words_, v);
      }
    }
  }
}

bool PartSumTable::covers(int parts, int max_part, std::int64_t sum) const {
  return parts <= parts_ && sum <= sum_ && (max_part <= cap_ || sum_bounds_cap_);
}

int PartSumTable::clamp_cap(int max_part) const {
  if (max_part <= 0) return 0;
  if (max_part <= cap_) return max_part;
  if (!sum_bounds_cap_) throw std::out_of_range("PartSumTable: part cap beyond table");
  return cap_;
}

const std::uint64_t* PartSumTable::row(int k, int j, int c) const {
  const std::size_t js = static_cast<std::size_t>(std::max(odd_, 0) + 1);
  const std::size_t idx =
      ((static_cast<std::size_t>(k) * js + static_cast<std::size_t>(j)) * static_cast<std::size_t>(cap_ + 1) +
       static_cast<std::size_t>(c)) *
      words_;
  return bits_.data() + idx;
}

std::uint64_t* PartSumTable::row(int k, int j, int c) {
  return const_cast<std::uint64_t*>(static_cast<const PartSumTable&>(*this).row(k, j, c));
}

bool PartSumTable::test(int k, int j, int c, std::int64_t s) const {
  return ((row(k, j, c)[s / 64] >> (s % 64)) & 1U) != 0;
}

bool PartSumTable::reachable(int parts, int max_part, std::int64_t sum, int odd) const {
  if (parts < 0 || sum < 0) return false;
  if (parts > parts_) throw std::out_of_range("PartSumTable: too many parts");
  if (sum > sum_) throw std::out_of_range("PartSumTable: sum beyond table");
  const int c = clamp_cap(max_part);
  if (odd >= 0) {
    if (!tracks_parity()) throw std::logic_error("PartSumTable: parity query on untracked table");
    if (odd > odd_) return false;
    return test(parts, odd, c, sum);
  }
  for (int j = 0; j <= std::max(odd_, 0); ++j)
    if (test(parts, j, c, sum)) return true;
  return false;
}

std::optional<std::vector<std::int64_t>> PartSumTable::smallest_descending(int parts, int max_part,
                                                                           std::int64_t sum, int odd) const {
  if (!reachable(parts, max_part, sum, odd)) return std::nullopt;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(parts));
  int prev = clamp_cap(max_part);
  std::int64_t rest = sum;
  int odd_rest = odd;
  for (int i = 0; i < parts; ++i) {
    bool placed = false;
    for (int v = 1; v <= prev; ++v) {
      const std::int64_t next = rest - part_value(kind_, v);
      if (next < 0) break;
      const int next_odd = odd < 0 ? -1 : odd_rest - (v & 1);
      if (odd >= 0 && next_odd < 0) continue;
      if (reachable(parts - i - 1, v, next, next_odd)) {
        out.push_back(v);
        rest = next;
        odd_rest = next_odd;
        prev = v;
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("PartSumTable: inconsistent table during reconstruction");
  }
  return out;
}

std::shared_ptr<const PartSumTable> shared_part_table(PartValue kind, int max_parts, int max_part,
                                                      std::int64_t max_sum) {
  static std::mutex mutex;
  static std::array<std::shared_ptr<const PartSumTable>, 2> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[kind == PartValue::Square ? 0 : 1];
  if (slot && slot->covers(max_parts, max_part, max_sum)) return slot;
  int parts = max_parts;
  int cap = max_part;
  std::int64_t sum = max_sum;
  if (slot) {
    parts = std::max(parts, slot->max_parts());
    cap = std::max(cap, slot->max_part() + slot->max_part() / 2);
    sum = std::max(sum, slot->max_sum() + slot->max_sum() / 2);
  }
  slot = std::make_shared<const PartSumTable>(kind, parts, cap, sum);
  return slot;
}

}  // namespace kumdeg
